// Vertices and volumes of the Walsh polytopes W(H_n) and P^1(H_n) for small n.
#include <spectratope/spectratope.hpp>

#include <iostream>

int main()
{
    using namespace spectratope;
    for (unsigned n = 1; n <= 2; ++n) {
        const RatMatrix h = walsh(n).matrix;
        for (const auto& [name, rep] : {std::pair{"W", wpolytope_hrep(h)}, std::pair{"P1", project_p1(h)}}) {
            const auto vertices = enumerate_vertices(rep);
            std::cout << name << "(H_" << n << "): " << vertices.size() << " vertices, volume "
                      << to_string(simplex_volume({vertices})) << "\n";
            for (const auto& v : vertices) {
                std::cout << "  (" << format_rational_list(v) << ")\n";
            }
        }
    }
}
