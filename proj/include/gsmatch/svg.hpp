#pragma once

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gsmatch/dp_matcher.hpp"
#include "gsmatch/shape.hpp"

namespace gsmatch {

struct RenderSpec {
    std::vector<std::string> pair_colors{"#e6194b", "#3cb44b", "#f58231", "#911eb4", "#808000",
                                         "#008080", "#f032e6", "#9a6324", "#000075", "#e6a800"};
    std::string skip_color = "#9fd8ff";  // light blue for unmatched segments
    double pair_stroke = 3.0;
    double skip_stroke = 2.0;
    double panel = 360.0;   // side of each square panel
    double margin = 20.0;
    double bp_radius = 3.0;

    const std::string& color(std::size_t pair_index) const { return pair_colors[pair_index % pair_colors.size()]; }
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

/// Fits a contour into a panel with its y axis pointing up.
struct PanelFit {
    double scale = 1.0, x0 = 0.0, y0 = 0.0, ox = 0.0, oy = 0.0;

    PanelFit(const Contour& c, double left, double top, double size) {
        double minx = c.points()[0].x, maxx = minx, miny = c.points()[0].y, maxy = miny;
        for (const Point& p : c.points()) {
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
        const double span = std::max({maxx - minx, maxy - miny, 1e-9});
        scale = size / span;
        x0 = minx;
        y0 = maxy;
        ox = left + 0.5 * (size - (maxx - minx) * scale);
        oy = top + 0.5 * (size - (maxy - miny) * scale);
    }
    Point operator()(Point p) const { return {ox + (p.x - x0) * scale, oy + (y0 - p.y) * scale}; }
};

/// Colour index per segment: pair index for matched segments, -1 when skipped.
inline std::vector<long> segment_owner(const MatchResult& r, const ShapeBundle& s, bool first) {
    const std::size_t m = s.segments().size();
    std::vector<long> owner(m, -1);
    for (std::size_t k = 0; k < r.match_list.pairs.size(); ++k) {
        const auto& g = s.catalog()[first ? r.match_list.pairs[k].gs1 : r.match_list.pairs[k].gs2];
        for (std::size_t t = 0; t < g.seg_count; ++t) owner[(g.start_seg + t) % m] = static_cast<long>(k);
    }
    return owner;
}

inline void draw_shape(std::ostream& out, const ShapeBundle& s, const std::vector<long>& owner, const PanelFit& fit,
                       const RenderSpec& spec) {
    const auto& pts = s.contour().points();
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k < s.segments().size(); ++k) {
        const Segment& seg = s.segments()[k];
        const bool skipped = owner[k] < 0;
        out << "<polyline fill=\"none\" stroke=\""
            << (skipped ? spec.skip_color : spec.color(static_cast<std::size_t>(owner[k]))) << "\" stroke-width=\""
            << (skipped ? spec.skip_stroke : spec.pair_stroke) << "\" points=\"";
        for (std::size_t t = 0; t <= seg.point_count; ++t) {
            const Point q = fit(pts[(seg.start_index + t) % n]);
            out << (t ? " " : "") << q.x << ',' << q.y;
        }
        out << "\"/>\n";
    }
    for (const BreakPoint& bp : s.breakpoints()) {
        const Point q = fit(pts[bp.index]);
        out << "<circle cx=\"" << q.x << "\" cy=\"" << q.y << "\" r=\"" << spec.bp_radius << "\" fill=\"#333\"/>\n";
    }
}

}  // namespace detail

/// Two panels side by side; a matched pair gets the same colour in both.
inline void write_svg(std::ostream& out, const MatchResult& r, const ShapeBundle& a, const ShapeBundle& b,
                      const RenderSpec& spec = {}, const std::string& title = {}) {
    const double w = 2.0 * spec.panel + 3.0 * spec.margin;
    const double h = spec.panel + 2.0 * spec.margin + 20.0;
    out << std::fixed << std::setprecision(2);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
        << ' ' << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::ostringstream caption;
    caption << std::setprecision(6) << (title.empty() ? "" : title + "  ") << "cost=" << r.cost;
    out << "<text x=\"" << spec.margin << "\" y=\"" << spec.margin << "\" font-family=\"sans-serif\" font-size=\"13\">"
        << detail::xml_escape(caption.str()) << "</text>\n";
    const double top = spec.margin + 20.0;
    const detail::PanelFit fa(a.contour(), spec.margin, top, spec.panel);
    const detail::PanelFit fb(b.contour(), 2.0 * spec.margin + spec.panel, top, spec.panel);
    out << "<g id=\"shape1\">\n";
    detail::draw_shape(out, a, detail::segment_owner(r, a, true), fa, spec);
    out << "</g>\n<g id=\"shape2\">\n";
    detail::draw_shape(out, b, detail::segment_owner(r, b, false), fb, spec);
    out << "</g>\n</svg>\n";
}

}  // namespace gsmatch
