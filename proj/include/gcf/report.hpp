#ifndef GCF_REPORT_HPP
#define GCF_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gcf/scoring.hpp"

namespace gcf {

// 12 significant digits; infinities as inf / -inf.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

inline std::string edge_list(const Dag& d) {
    std::vector<std::string> parts;
    for (const auto& e : d.edges()) parts.push_back(to_string(e));
    return join(parts, ";");
}

inline std::string scores_csv(const std::vector<ScoreRecord>& records) {
    std::ostringstream out;
    out << "graph_id,orientation_vector,edges,gf,gcf,gcf_abs,flags\n";
    for (const auto& r : records) {
        out << r.graph_id << ',' << r.orientation << ',' << edge_list(r.dag) << ',' << format_number(r.gf) << ','
            << format_number(r.gcf) << ',' << (r.gcf_abs ? format_number(*r.gcf_abs) : "") << ','
            << join(r.flags, ";") << '\n';
    }
    return out.str();
}

inline std::string do_divergences_csv(const std::vector<NodeDoDivergence>& nodes) {
    std::ostringstream out;
    out << "node,value,D_a,weight,D_node\n";
    for (const auto& n : nodes)
        for (const auto& t : n.terms)
            out << n.node << ',' << t.value << ',' << (t.covered ? format_number(t.divergence) : "") << ','
                << format_number(t.weight) << ',' << format_number(n.value) << '\n';
    return out.str();
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

// GCF (y) against GF (x), one labelled point per record. The x axis spans the
// finite GF values; +inf / -inf GF points are pinned to the right / left
// margins and drawn as triangles.
inline std::string scatter_svg(const std::vector<ScoreRecord>& records) {
    constexpr double width = 800, height = 600;
    constexpr double left = 80, right = 720, top = 50, bottom = 530;
    constexpr double pin_right = 760, pin_left = 40;

    double lo = 0, hi = 0;
    bool any = false;
    for (const auto& r : records)
        if (std::isfinite(r.gf)) {
            lo = any ? std::min(lo, r.gf) : r.gf;
            hi = any ? std::max(hi, r.gf) : r.gf;
            any = true;
        }
    if (!any) lo = 0, hi = 1;
    if (hi - lo < 1e-12) {
        double pad = std::max(0.5, std::abs(lo) * 0.1);
        lo -= pad;
        hi += pad;
    } else {
        double pad = (hi - lo) * 0.08;
        lo -= pad;
        hi += pad;
    }
    auto sx = [&](double gf) { return left + (gf - lo) / (hi - lo) * (right - left); };
    auto sy = [&](double g) { return bottom - (g + 1.1) / 2.2 * (bottom - top); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    o << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">GCF vs GF</text>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\"" << bottom - top
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        double v = lo + (hi - lo) * i / 4.0;
        double x = sx(v);
        o << "<line x1=\"" << detail::px(x) << "\" y1=\"" << bottom << "\" x2=\"" << detail::px(x) << "\" y2=\""
          << bottom + 5 << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << detail::px(x) << "\" y=\"" << bottom + 20
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << format_number(std::round(v * 1e4) / 1e4)
          << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        double v = -1.0 + 0.5 * i;
        double y = sy(v);
        o << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::px(y) << "\" x2=\"" << right << "\" y2=\""
          << detail::px(y) << "\" stroke=\"" << (v == 0.0 ? "#999999" : "#dddddd") << "\"/>\n";
        o << "<text x=\"" << left - 8 << "\" y=\"" << detail::px(y + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_number(v) << "</text>\n";
    }
    o << "<text x=\"400\" y=\"570\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">GF</text>\n";
    o << "<text x=\"20\" y=\"290\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 20 290)\">GCF</text>\n";

    // Coincident points stack their labels.
    std::map<std::pair<long, long>, int> stacked;
    for (const auto& r : records) {
        double x = std::isfinite(r.gf) ? sx(r.gf) : (r.gf > 0 ? pin_right : pin_left);
        double y = sy(r.gcf);
        int slot = stacked[{std::lround(x), std::lround(y)}]++;
        if (std::isfinite(r.gf)) {
            o << "<circle cx=\"" << detail::px(x) << "\" cy=\"" << detail::px(y)
              << "\" r=\"5\" fill=\"steelblue\" stroke=\"black\"/>\n";
        } else {
            o << "<polygon points=\"" << detail::px(x) << "," << detail::px(y - 6) << " " << detail::px(x - 6) << ","
              << detail::px(y + 5) << " " << detail::px(x + 6) << "," << detail::px(y + 5)
              << "\" fill=\"darkorange\" stroke=\"black\"/>\n";
        }
        std::string label = r.graph_id + (std::isinf(r.gf) ? (r.gf > 0 ? " (GF=inf)" : " (GF=-inf)") : "");
        bool flip = x > right - 60;
        o << "<text x=\"" << detail::px(flip ? x - 9 : x + 9) << "\" y=\"" << detail::px(y - 8 - 13.0 * slot)
          << "\" text-anchor=\"" << (flip ? "end" : "start") << "\" font-family=\"monospace\" font-size=\"11\">"
          << detail::xml_escape(label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace gcf

#endif  // GCF_REPORT_HPP
