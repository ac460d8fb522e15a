#include "pfield/constellation.hpp"

#include "pfield/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pfield {

namespace {

using cplx = std::complex<double>;

constexpr int kBoxEdge = -1;

struct Polygon {
    std::vector<cplx> v;
    std::vector<int> label; ///< label[i] tags the edge v[i] -> v[i+1]
};

double dot(cplx a, cplx b)
{
    return a.real() * b.real() + a.imag() * b.imag();
}

/// Clips `poly` to {z : dot(a, z) <= c}; the new edge is tagged `tag`.
Polygon clip(const Polygon& poly, cplx a, double c, int tag, double eps)
{
    Polygon out;
    const std::size_t n = poly.v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx p = poly.v[i];
        const cplx q = poly.v[(i + 1) % n];
        const double dp = dot(a, p) - c;
        const double dq = dot(a, q) - c;
        const bool p_in = dp <= eps;
        const bool q_in = dq <= eps;
        if (p_in) {
            out.v.push_back(p);
            out.label.push_back(poly.label[i]);
            if (!q_in) {
                out.v.push_back(p + (q - p) * (dp / (dp - dq)));
                out.label.push_back(tag);
            }
        } else if (q_in) {
            out.v.push_back(p + (q - p) * (dp / (dp - dq)));
            out.label.push_back(poly.label[i]);
        }
    }
    // Drop vertices that coincide with their successor.
    Polygon clean;
    for (std::size_t i = 0; i < out.v.size(); ++i) {
        const cplx next = out.v[(i + 1) % out.v.size()];
        if (std::abs(next - out.v[i]) > eps)
            clean.v.push_back(out.v[i]), clean.label.push_back(out.label[i]);
    }
    return clean;
}

} // namespace

std::vector<std::size_t> DecisionGeometry::neighbors(std::size_t k) const
{
    std::vector<std::size_t> out;
    for (const auto& w : wedges.at(k))
        if (std::find(out.begin(), out.end(), w.neighbor) == out.end())
            out.push_back(w.neighbor);
    std::sort(out.begin(), out.end());
    return out;
}

DecisionGeometry decision_geometry(const Constellation& c)
{
    const std::size_t m = c.size();
    if (m < 2)
        throw GeometryError("decision geometry needs at least 2 points");
    double extent = 0.0;
    for (const auto& s : c.points)
        extent = std::max(extent, std::abs(s));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l)
            if (std::abs(c.points[k] - c.points[l]) <= 1e-12 * std::max(extent, 1.0))
                throw GeometryError("duplicate constellation points " + std::to_string(k) + " and " + std::to_string(l));

    const double box = 1e6 * std::max(extent, 1.0);
    const double eps = 1e-9 * std::max(extent, 1.0);
    const double on_box = box * (1.0 - 1e-9);
    const double min_edge = 1e-7 * std::max(extent, 1.0);

    DecisionGeometry g;
    g.wedges.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const cplx sk = c.points[k];
        Polygon cell{{{-box, -box}, {box, -box}, {box, box}, {-box, box}}, {kBoxEdge, kBoxEdge, kBoxEdge, kBoxEdge}};
        for (std::size_t l = 0; l < m && !cell.v.empty(); ++l) {
            if (l == k)
                continue;
            const cplx sl = c.points[l];
            cell = clip(cell, sl - sk, (std::norm(sl) - std::norm(sk)) / 2.0, static_cast<int>(l), eps);
        }
        const std::size_t n = cell.v.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (cell.label[i] == kBoxEdge)
                continue;
            const cplx v1 = cell.v[i];
            const cplx v2 = cell.v[(i + 1) % n];
            if (std::abs(v2 - v1) <= min_edge)
                continue;
            const auto l = static_cast<std::size_t>(cell.label[i]);
            const cplx diff = c.points[l] - sk;
            const cplx normal = diff / std::abs(diff);
            const cplx tangent = normal * cplx{0.0, 1.0};
            auto angle = [&](cplx v, double at_infinity) {
                if (std::max(std::abs(v.real()), std::abs(v.imag())) >= on_box)
                    return at_infinity;
                return std::atan2(dot(v - sk, tangent), dot(v - sk, normal));
            };
            const double t1 = angle(v1, -std::numbers::pi / 2.0);
            const double t2 = angle(v2, std::numbers::pi / 2.0);
            if (!(t2 > t1))
                continue;
            g.wedges[k].push_back({l, t2 - t1, std::numbers::pi / 2.0 + t1, std::norm(diff)});
        }
    }
    return g;
}

} // namespace pfield
