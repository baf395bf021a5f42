#pragma once

#include <spectratope/io.hpp>
#include <spectratope/polyhedra.hpp>
#include <spectratope/realize.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace spectratope::figures {

struct Region {
    std::string name;
    HRep hrep;
    std::vector<RatVector> vertices;
};

/// Planar vertices go in counterclockwise order around their centroid so polygons plot directly.
inline void order_for_plotting(std::vector<RatVector>& vertices)
{
    if (vertices.size() < 3 || vertices.front().size() != 2) {
        return;
    }
    double cx = 0.0;
    double cy = 0.0;
    for (const auto& v : vertices) {
        cx += to_double(v[0]);
        cy += to_double(v[1]);
    }
    cx /= static_cast<double>(vertices.size());
    cy /= static_cast<double>(vertices.size());
    std::ranges::stable_sort(vertices, {}, [&](const RatVector& v) {
        return std::atan2(to_double(v[1]) - cy, to_double(v[0]) - cx);
    });
}

inline Region make_region(std::string name, HRep h)
{
    Region r{std::move(name), std::move(h), {}};
    r.vertices = enumerate_vertices(r.hrep);
    order_for_plotting(r.vertices);
    return r;
}

/// fig1: n = 2 regions; fig2: n = 3 projected regions for H_1 ⊕ H_0, its column swap, and S_a;
/// fig3: the projected spectratope of H_2.
inline std::vector<Region> figure_regions(const std::string& which, const Rational& a)
{
    if (which == "fig1") {
        const RatMatrix h1 = walsh(1).matrix;
        return {make_region("W(H1)", wpolytope_hrep(h1)), make_region("P(H1)", spectratope_hrep(h1)),
                make_region("P1(H1)", project_p1(h1))};
    }
    if (which == "fig2") {
        const RatMatrix s = direct_sum({walsh(1).matrix, RatMatrix{{1}}});
        const Permutation swap23(std::vector<std::size_t>{0, 2, 1});
        const RatMatrix sp = s * swap23.to_matrix<Rational>();
        return {make_region("P1(S)", project_p1(s)), make_region("P1(SP)", project_p1(sp)),
                make_region("P1(S_a)", project_p1(n3_basis(a)))};
    }
    if (which == "fig3") {
        return {make_region("P1(H2)", project_p1(walsh(2).matrix))};
    }
    throw Error(ErrorCode::Parse, "unknown figure '" + which + "' (expected fig1, fig2 or fig3)");
}

/// Lines `region,vertex,x1,...` and `region,inequality,a1,...,b,"tag"` under a `region,kind,values` header.
inline std::string figure_csv(const std::vector<Region>& regions)
{
    std::string out = "region,kind,values\n";
    for (const auto& r : regions) {
        for (const auto& v : r.vertices) {
            out += r.name + ",vertex," + io::join(v) + '\n';
        }
        for (const auto& row : r.hrep.rows) {
            out += r.name + ",inequality," + io::join(row.normal) + "," + to_string(row.offset) + ",\"" +
                   to_string(row.tag) + "\"\n";
        }
    }
    return out;
}

} // namespace spectratope::figures
