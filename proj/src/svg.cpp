#include "conekit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace conekit {

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_x, bool log_y, int width,
                    int height) {
    const double ml = 64, mr = 16, mt = 34, mb = 44;
    auto tx = [&](double v) { return log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y ? std::log10(std::max(v, 1e-300)) : v; };
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_y && s.y[i] <= 0.0) continue;
            if (log_x && s.x[i] <= 0.0) continue;
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    if (!(xmin <= xmax && ymin <= ymax)) { xmin = ymin = 0; xmax = ymax = 1; }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double v) {
        return height - mb - (ty(v) - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
       << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << width / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
       << "</text>\n";
    os << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr << "' y2='"
       << height - mb << "' stroke='black'/>\n";
    os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << height - mb
       << "' stroke='black'/>\n";
    for (int k = 0; k <= 4; ++k) {
        double fx = xmin + (xmax - xmin) * k / 4.0;
        double fy = ymin + (ymax - ymin) * k / 4.0;
        double X = ml + (width - ml - mr) * k / 4.0;
        double Y = height - mb - (height - mt - mb) * k / 4.0;
        os << "<text x='" << X << "' y='" << height - mb + 16
           << "' text-anchor='middle' font-size='10'>" << (log_x ? "1e" : "")
           << (log_x ? std::to_string(fx).substr(0, 6) : std::to_string(fx).substr(0, 8))
           << "</text>\n";
        os << "<text x='" << ml - 6 << "' y='" << Y + 3
           << "' text-anchor='end' font-size='10'>" << (log_y ? "1e" : "")
           << (log_y ? std::to_string(fy).substr(0, 6) : std::to_string(fy).substr(0, 8))
           << "</text>\n";
    }
    int li = 0;
    for (const auto& s : series) {
        os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((log_x && s.x[i] <= 0) || (log_y && s.y[i] <= 0)) continue;
            os << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        os << "'/>\n";
        os << "<text x='" << width - mr - 4 << "' y='" << mt + 14 * (li + 1)
           << "' text-anchor='end' font-size='11' fill='" << s.color << "'>" << s.label
           << "</text>\n";
        ++li;
    }
    os << "</svg>\n";

    std::ofstream out(path);
    if (!out.good()) throw std::runtime_error("cannot write " + path);
    out << os.str();
}

}  // namespace conekit
