// Writes the bundled corpus. Cones and suspensions are derived with the library
// constructions so their coordinates and filtrations stay consistent.
#include "ihom/document.hpp"

#include <fstream>
#include <iostream>

using namespace ihom;

namespace {

ComplexDocument make(const std::string& name, int n, std::vector<std::vector<std::int64_t>> simplices,
                     std::vector<std::string> tags = {}) {
    ComplexDocument d;
    d.name = name;
    d.formal_dim = n;
    d.simplices = std::move(simplices);
    d.tags = std::move(tags);
    return d;
}

void write(const std::filesystem::path& dir, const ComplexDocument& d) {
    // Normalize through the parser so the file is in canonical form.
    ComplexDocument check = parse_document(serialize_document(d));
    document_complex(check);
    std::ofstream(dir / (d.name + ".json")) << serialize_document(check);
    std::cout << d.name << '\n';
}

ComplexDocument derived(const ComplexDocument& base, const std::string& prefix, bool suspension) {
    FilteredComplex X = document_complex(base);
    ComplexDocument d = document_from_complex(suspension ? suspension_complex(X) : cone_complex(X),
                                              prefix + "_" + base.name);
    d.tags = {suspension ? "suspension" : "cone"};
    return d;
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "corpus";
    std::filesystem::create_directories(dir);

    std::vector<ComplexDocument> bases;
    bases.push_back(make("simplex2", 2, {{0, 1, 2}}, {"cone_base"}));
    bases.push_back(make("circle", 1, {{0, 1}, {1, 2}, {0, 2}}, {"cone_base"}));
    bases.push_back(make("two_circles", 1, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, {"cone_base"}));
    // Six-vertex projective plane.
    bases.push_back(make("rp2", 2,
                         {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                          {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}},
                         {"cone_base"}));
    for (const auto& b : bases) {
        write(dir, b);
        write(dir, derived(b, "cone", false));
        write(dir, derived(b, "suspension", true));
    }

    // Sphere with its two poles identified at vertex 0: cones from 0 over the 3-cycles
    // 1,2,3 and 4,5,6, joined by a cylinder.
    ComplexDocument pinched = make("pinched_torus", 2,
                                   {{0, 1, 2}, {0, 2, 3}, {0, 1, 3}, {0, 4, 5}, {0, 5, 6}, {0, 4, 6},
                                    {1, 2, 4}, {2, 4, 5}, {2, 3, 5}, {3, 5, 6}, {1, 3, 6}, {1, 4, 6}},
                                   {"cone_base"});
    pinched.vertex_filtration = {{0, 0}};
    pinched.perversities = {{"one", "k:1"}};
    write(dir, pinched);
    write(dir, derived(pinched, "cone", false));

    // Seven-vertex torus; its cone has the apex as a codimension-three stratum.
    ComplexDocument torus = make("torus7", 2,
                                 {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {0, 4, 5}, {1, 5, 6}, {0, 2, 6},
                                  {0, 1, 5}, {1, 2, 6}, {0, 2, 3}, {1, 3, 4}, {2, 4, 5}, {3, 5, 6}, {0, 4, 6}});
    ComplexDocument cone_torus = derived(torus, "cone", false);
    write(dir, cone_torus);

    // Triangle starred at its barycentre, which is the singular point. The chain
    // triangulation is the original triangle.
    ComplexDocument disc = make("barycentre_disc", 2, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
    disc.vertex_filtration = {{3, 0}};
    auto q = [](const char* s) { return *parse_rational(s); };
    disc.coordinates = {{0, {q("0"), q("0")}}, {1, {q("1"), q("0")}}, {2, {q("0"), q("1")}}, {3, {q("1/3"), q("1/3")}}};
    disc.chains = ChainTriangulation{{{q("0"), q("0")}, {q("1"), q("0")}, {q("0"), q("1")}}, {{0, 1, 2}}};
    write(dir, disc);
    return 0;
}
