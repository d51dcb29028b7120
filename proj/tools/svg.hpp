#ifndef QCORNER_TOOLS_SVG_HPP
#define QCORNER_TOOLS_SVG_HPP

// Minimal SVG line plots. Coordinates are printed with fixed precision so the
// output is byte-stable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace qcorner::cli {

class SvgPlot {
public:
    using Polyline = std::vector<std::pair<double, double>>;

    SvgPlot(std::string title, std::string xlabel, std::string ylabel)
        : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

    void line(Polyline pts, std::string color, double width = 1.5) {
        for (const auto& p : pts) extend(p);
        items_.push_back({std::move(pts), std::move(color), width, false});
    }
    void markers(Polyline pts, std::string color) {
        for (const auto& p : pts) extend(p);
        items_.push_back({std::move(pts), std::move(color), 0.0, true});
    }
    /// Keeps both axes on the same scale (for plane pictures).
    void equal_aspect() { equal_ = true; }

    std::string render() const {
        double x0 = xmin_, x1 = xmax_, y0 = ymin_, y1 = ymax_;
        if (!(x1 > x0)) x0 -= 1.0, x1 += 1.0;
        if (!(y1 > y0)) y0 -= 1.0, y1 += 1.0;
        const double padx = 0.05 * (x1 - x0), pady = 0.05 * (y1 - y0);
        x0 -= padx, x1 += padx, y0 -= pady, y1 += pady;
        double sx = kPlotW / (x1 - x0), sy = kPlotH / (y1 - y0);
        if (equal_) sx = sy = std::min(sx, sy);
        auto X = [&](double x) { return kLeft + (x - x0) * sx; };
        auto Y = [&](double y) { return kTop + kPlotH - (y - y0) * sy; };

        std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
        s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
        s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(kPlotW) + "\" height=\"" + num(kPlotH) +
             "\" fill=\"none\" stroke=\"#888\"/>\n";
        s += text(320, 24, title_, 16, "middle");
        s += text(kLeft + kPlotW / 2, 470, xlabel_, 12, "middle");
        s += "<text x=\"16\" y=\"" + num(kTop + kPlotH / 2) + "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
             num(kTop + kPlotH / 2) + ")\">" + escape(ylabel_) + "</text>\n";
        s += text(kLeft, kTop + kPlotH + 16, num(x0), 10, "start");
        s += text(kLeft + kPlotW, kTop + kPlotH + 16, num(x1), 10, "end");
        s += text(kLeft - 4, kTop + kPlotH, num(y0), 10, "end");
        s += text(kLeft - 4, kTop + 10, num(y1), 10, "end");
        for (const auto& it : items_) {
            if (it.dots) {
                for (const auto& [x, y] : it.pts)
                    s += "<circle cx=\"" + num(X(x)) + "\" cy=\"" + num(Y(y)) + "\" r=\"3\" fill=\"" + it.color + "\"/>\n";
                continue;
            }
            s += "<polyline fill=\"none\" stroke=\"" + it.color + "\" stroke-width=\"" + num(it.width) + "\" points=\"";
            for (std::size_t i = 0; i < it.pts.size(); ++i)
                s += (i ? " " : "") + num(X(it.pts[i].first)) + "," + num(Y(it.pts[i].second));
            s += "\"/>\n";
        }
        return s + "</svg>\n";
    }

private:
    static constexpr double kLeft = 70, kTop = 40, kPlotW = 540, kPlotH = 380;

    struct Item {
        Polyline pts;
        std::string color;
        double width;
        bool dots;
    };

    void extend(const std::pair<double, double>& p) {
        if (!std::isfinite(p.first) || !std::isfinite(p.second)) return;
        xmin_ = std::min(xmin_, p.first), xmax_ = std::max(xmax_, p.first);
        ymin_ = std::min(ymin_, p.second), ymax_ = std::max(ymax_, p.second);
    }
    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", v);
        return buf;
    }
    static std::string escape(const std::string& t) {
        std::string o;
        for (char c : t) {
            if (c == '<') o += "&lt;";
            else if (c == '>') o += "&gt;";
            else if (c == '&') o += "&amp;";
            else o += c;
        }
        return o;
    }
    static std::string text(double x, double y, const std::string& t, int size, const char* anchor) {
        return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) + "\" text-anchor=\"" + anchor +
               "\">" + escape(t) + "</text>\n";
    }

    std::string title_, xlabel_, ylabel_;
    std::vector<Item> items_;
    double xmin_ = std::numeric_limits<double>::infinity(), xmax_ = -std::numeric_limits<double>::infinity();
    double ymin_ = std::numeric_limits<double>::infinity(), ymax_ = -std::numeric_limits<double>::infinity();
    bool equal_ = false;
};

}  // namespace qcorner::cli

#endif  // QCORNER_TOOLS_SVG_HPP
