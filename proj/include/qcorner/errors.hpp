#ifndef QCORNER_ERRORS_HPP
#define QCORNER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcorner {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QCORNER_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

// lseries
QCORNER_DEFINE_ERROR(NonPositiveValuation);
QCORNER_DEFINE_ERROR(InvalidSeries);

// lsurface
QCORNER_DEFINE_ERROR(OutOfSector);
QCORNER_DEFINE_ERROR(ProjectionError);

// domains
QCORNER_DEFINE_ERROR(CuspAngleZero);
QCORNER_DEFINE_ERROR(RequiresTranslation);
QCORNER_DEFINE_ERROR(InversionFailure);
QCORNER_DEFINE_ERROR(UnknownClass);
QCORNER_DEFINE_ERROR(InvalidDomain);

// reflekt
QCORNER_DEFINE_ERROR(ImageEscapesChart);
QCORNER_DEFINE_ERROR(NormalizationError);
QCORNER_DEFINE_ERROR(GermTooSmall);
QCORNER_DEFINE_ERROR(OutsideExtensionDomain);

// lehman
QCORNER_DEFINE_ERROR(IllConditioned);
QCORNER_DEFINE_ERROR(FailedCertificate);
QCORNER_DEFINE_ERROR(DichotomyViolation);

// scmap
QCORNER_DEFINE_ERROR(DegenerateTransform);
QCORNER_DEFINE_ERROR(NonConvergence);
QCORNER_DEFINE_ERROR(InvalidAngles);

#undef QCORNER_DEFINE_ERROR

}  // namespace qcorner

#endif  // QCORNER_ERRORS_HPP
