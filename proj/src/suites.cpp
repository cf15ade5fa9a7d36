#include "ihom/suites.hpp"
#include "ihom/errors.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>

namespace ihom {

bool SuiteResult::pass() const { return failures() == 0; }

std::size_t SuiteResult::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.pass; }));
}

void SuiteResult::append(SuiteResult other) {
    checks.insert(checks.end(), std::make_move_iterator(other.checks.begin()), std::make_move_iterator(other.checks.end()));
}

const ComplexDocument* SuiteContext::find(const std::string& name) const {
    for (const auto& [path, doc] : corpus_)
        if (doc.name == name) return &doc;
    return nullptr;
}

const FilteredComplex& SuiteContext::complex(const ComplexDocument& doc) {
    auto& slot = complexes_[doc.name];
    if (!slot) slot = std::make_unique<FilteredComplex>(document_complex(doc));
    return *slot;
}

Workspace& SuiteContext::workspace(const ComplexDocument& doc, const std::string& perversity) {
    auto& slot = workspaces_[{doc.name, perversity}];
    if (!slot) {
        const FilteredComplex& X = complex(doc);
        slot = std::make_unique<Workspace>(X, parse_perversity(perversity, X, &doc), seed_, doc.chains);
    }
    return *slot;
}

std::vector<std::pair<std::string, Workspace*>> SuiteContext::workspaces() {
    std::vector<std::pair<std::string, Workspace*>> out;
    for (auto& [k, w] : workspaces_) out.emplace_back(k.first + "/" + k.second, w.get());
    for (auto& [label, w] : scratch_) out.emplace_back(label, w.get());
    return out;
}

Workspace& SuiteContext::scratch(const std::string& label, const FilteredComplex& X, const Perversity& p) {
    scratch_.emplace_back(label, std::make_unique<Workspace>(X, p, seed_));
    return *scratch_.back().second;
}

std::vector<std::string> SuiteContext::distinct_perversities(const ComplexDocument& doc,
                                                             const std::vector<std::string>& specs) {
    const FilteredComplex& X = complex(doc);
    std::vector<std::string> out;
    std::vector<Perversity> seen;
    for (const auto& s : specs) {
        Perversity p = parse_perversity(s, X, &doc);
        if (std::find(seen.begin(), seen.end(), p) != seen.end()) continue;
        seen.push_back(p);
        out.push_back(s);
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string str(std::size_t v) { return std::to_string(v); }

std::string key_text(const std::vector<PointId>& k) {
    std::string s = "[";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + "]";
}

const std::vector<std::string> kTestedPerversities{"0", "m", "t", "k:1"};

// Simplices of X plus, when present, the faces of the chain triangulation, as point ids.
std::vector<std::vector<PointId>> test_simplices(Workspace& ws) {
    std::set<std::vector<PointId>> out;
    const FilteredComplex& X = ws.complex();
    for (SimplexId s = 0; s < X.num_simplices(); ++s) out.insert(X.simplex(s));
    if (ws.has_chain_triangulation()) {
        const CellComplex& L = ws.cells(Notion::Poly, 0);
        for (const auto& dim : L.cells) out.insert(dim.begin(), dim.end());
    }
    return {out.begin(), out.end()};
}

SuiteResult wrap_errors(const std::string& name, const std::function<SuiteResult()>& body) {
    try {
        return body();
    } catch (const Error& e) {
        SuiteResult r;
        r.checks.push_back({name, false, {{"error", e.what()}}});
        return r;
    }
}

}  // namespace

SuiteResult cone_suite(SuiteContext& ctx) {
    SuiteResult out;
    const int level = 1;
    for (const auto& [path, doc] : ctx.corpus()) {
        if (!doc.has_tag("cone_base")) continue;
        out.append(wrap_errors("cone_" + doc.name, [&, &doc = doc] {
            SuiteResult r;
            const FilteredComplex& X = ctx.complex(doc);
            const Perversity p = parse_perversity("0", X, &doc);
            FilteredComplex cX = cone_complex(X);
            for (Notion notion : {Notion::Poly, Notion::GM}) {
                const HomologyResult base = ctx.workspace(doc, "0").homology(notion, level, RingSpec{});
                for (int D = -2; D <= 1; ++D) {
                    const auto start = Clock::now();
                    Perversity cp = cone_perversity(X, cX, p, ExtInt(D));
                    Workspace& ws = ctx.scratch("cone_" + doc.name + "/Dp(v)=" + std::to_string(D) + "/" + notion_name(notion), cX, cp);
                    const HomologyResult h = ws.homology(notion, level, RingSpec{});
                    HomologyResult expected = h;
                    for (std::size_t k = 0; k < h.betti.size(); ++k) {
                        if (static_cast<int>(k) <= D) {
                            expected.betti[k] = k < base.betti.size() ? base.betti[k] : 0;
                            expected.torsion[k] = k < base.torsion.size() ? base.torsion[k] : std::vector<BigInt>{};
                        } else {
                            expected.betti[k] = k == 0 ? 1 : 0;
                            expected.torsion[k].clear();
                        }
                    }
                    const double secs = seconds_since(start);
                    r.checks.push_back({"cone(" + doc.name + ") Dp(v)=" + std::to_string(D) + " " + notion_name(notion),
                                        expected == h && secs < 10.0,
                                        {{"base", base.summary()},
                                         {"expected", expected.summary()},
                                         {"computed", h.summary()},
                                         {"under_10s", secs < 10.0 ? "yes" : "no"}}});
                }
            }
            return r;
        }));
    }
    return out;
}

SuiteResult homotopy_suite(SuiteContext& ctx, std::size_t chains) {
    SuiteResult out;
    std::mt19937_64 rng(ctx.seed() ^ 0x5eedULL);
    const std::size_t ndocs = ctx.corpus().size();
    const std::size_t per_doc = ndocs ? (chains + ndocs - 1) / ndocs : 0;
    std::size_t tested = 0, failed = 0;
    for (const auto& [path, doc] : ctx.corpus()) {
        out.append(wrap_errors("homotopy_" + doc.name, [&, &doc = doc] {
            SuiteResult r;
            Workspace& ws = ctx.workspace(doc, "0");
            PseudoBarycentricSystem& sys = ws.system();
            const FilteredComplex& X = ws.complex();
            std::size_t bad = 0;
            for (std::size_t c = 0; c < per_doc; ++c) {
                const int d = std::uniform_int_distribution<int>(0, X.max_simplex_dim())(rng);
                const auto pool = X.simplices_of_dim(d);
                Chain xi(d);
                const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
                for (int t = 0; t < terms; ++t) {
                    const SimplexId s = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
                    int coeff = std::uniform_int_distribution<int>(-3, 2)(rng);
                    if (coeff >= 0) ++coeff;
                    xi.add(X.simplex(s), coeff);
                }
                const Chain sd = sys.sd(xi);
                const Chain lhs = xi - sd;
                const Chain rhs = sys.homotopy_T(xi).boundary() + sys.homotopy_T(xi.boundary());
                const bool chain_map = sd.boundary() == sys.sd(xi.boundary());
                if (!(lhs == rhs) || !chain_map) ++bad;
                ++tested;
            }
            failed += bad;
            r.checks.push_back({"homotopy(" + doc.name + ")", bad == 0, {{"chains", str(per_doc)}, {"failures", str(bad)}}});
            return r;
        }));
    }
    out.checks.push_back({"homotopy identity coverage", tested >= 200 && failed == 0,
                          {{"chains", str(tested)}, {"failures", str(failed)}}});
    return out;
}

SuiteResult preservation_suite(SuiteContext& ctx) {
    SuiteResult out;
    for (const auto& [path, doc] : ctx.corpus()) {
        for (const auto& spec : ctx.distinct_perversities(doc, kTestedPerversities)) {
            out.append(wrap_errors("preservation_" + doc.name + "_" + spec, [&, &doc = doc] {
                SuiteResult r;
                Workspace& ws = ctx.workspace(doc, spec);
                AllowabilityOracle& oracle = ws.oracle();
                std::size_t simplices = 0, cells = 0, bad = 0;
                std::string witness;
                for (const auto& sigma : test_simplices(ws)) {
                    if (sigma.size() < 2 || !oracle.allowable(sigma, Notion::Poly)) continue;
                    ++simplices;
                    const Chain s = Chain::simplex(sigma);
                    const Chain sd = ws.system().sd(s);
                    const Chain T = ws.system().homotopy_T(s);
                    for (const Chain* c : {&sd, &T})
                        for (const auto& [key, coeff] : c->terms()) {
                            ++cells;
                            if (!oracle.allowable(key, Notion::Poly)) {
                                ++bad;
                                if (witness.empty()) witness = key_text(sigma) + " -> " + key_text(key);
                            }
                        }
                    if (oracle.intersection_chain(s, Notion::Poly) && !oracle.intersection_chain(sd, Notion::Poly)) {
                        ++bad;
                        if (witness.empty()) witness = "sd of intersection chain " + key_text(sigma);
                    }
                }
                std::vector<std::pair<std::string, std::string>> values{
                    {"allowable_simplices", str(simplices)}, {"cells", str(cells)}, {"failures", str(bad)}};
                if (!witness.empty()) values.emplace_back("witness", witness);
                r.checks.push_back({"preservation(" + doc.name + ", " + spec + ")", bad == 0, values});
                return r;
            }));
        }
    }
    return out;
}

SuiteResult diameter_suite(SuiteContext& ctx) {
    SuiteResult out;
    std::size_t systems = 0, cells = 0, bad = 0, invalid = 0;
    Rational worst = 0;
    std::string witness;
    for (auto& [label, ws] : ctx.workspaces()) {
        PseudoBarycentricSystem& sys = ws->system();
        std::vector<std::vector<PointId>> keys;
        for (const auto& [sigma, e] : sys.entries()) keys.push_back(sigma);
        for (const auto& sigma : keys) {
            if (sigma.size() < 2) continue;
            ++systems;
            const SystemEntry& e = sys.entries().at(sigma);
            auto sqdiam = [&](const std::vector<PointId>& pts) {
                Rational m = 0;
                for (std::size_t i = 0; i < pts.size(); ++i)
                    for (std::size_t j = i + 1; j < pts.size(); ++j)
                        m = std::max(m, squared_distance(ws->space().point(pts[i]), ws->space().point(pts[j])));
                return m;
            };
            const Rational D = sqdiam(sigma);
            const auto l = static_cast<long>(sigma.size()) - 1;
            Rational bound(2 * l, 2 * l + 1);
            bound.canonicalize();
            for (const auto& f : e.flags) {
                ++cells;
                const Rational ratio = sqdiam(f) / D / (bound * bound);
                worst = std::max(worst, ratio);
                if (ratio > 1) {
                    ++bad;
                    if (witness.empty()) witness = key_text(f);
                }
            }
            if (!sys.validate(sigma).empty()) {
                ++invalid;
                if (witness.empty()) witness = key_text(sigma) + ": " + sys.validate(sigma);
            }
        }
    }
    std::vector<std::pair<std::string, std::string>> values{{"systems", str(systems)},
                                                            {"cells", str(cells)},
                                                            {"diameter_failures", str(bad)},
                                                            {"invariant_failures", str(invalid)},
                                                            {"worst_squared_ratio_to_bound", format_rational(worst)}};
    if (!witness.empty()) values.emplace_back("witness", witness);
    out.checks.push_back({"diameter bound over all built systems", systems > 0 && bad == 0 && invalid == 0, values});
    return out;
}

SuiteResult bad_face_suite(SuiteContext& ctx) {
    SuiteResult out;
    for (const auto& [path, doc] : ctx.corpus())
        for (const auto& spec : ctx.distinct_perversities(doc, kTestedPerversities))
            out.append(wrap_errors("systems_" + doc.name + "_" + spec, [&, &doc = doc] {
                Workspace& ws = ctx.workspace(doc, spec);
                for (const auto& sigma : test_simplices(ws)) ws.system().build(sigma);
                return SuiteResult{};
            }));
    for (const auto& entry : ctx.workspaces()) {
        const std::string& label = entry.first;
        Workspace& ws = *entry.second;
        out.append(wrap_errors("badface_" + label, [&] {
            SuiteResult r;
            AllowabilityOracle& oracle = ws.oracle();
            std::vector<std::vector<PointId>> keys;
            for (const auto& [sigma, e] : ws.system().entries()) keys.push_back(sigma);
            std::size_t tops = 0, outside = 0, outside_no_complete_min = 0, with_bad = 0, bad = 0;
            std::string witness;
            auto fail = [&](const std::string& w) {
                ++bad;
                if (witness.empty()) witness = w;
            };
            auto complete_minimum = [&](const std::vector<PointId>& B) -> std::optional<BadFaceReport> {
                try {
                    BadFaceReport rep = bad_face(oracle, B);
                    if (rep.bad_face)
                        for (std::size_t i = 0; i < rep.bad_face->size(); ++i)
                            if ((*rep.bad_face)[i] != i) return std::nullopt;
                    return rep;
                } catch (const Error&) {
                    return std::nullopt;
                }
            };
            for (const auto& sigma : keys) {
                if (sigma.size() < 2) continue;
                const SystemEntry& e = ws.system().entries().at(sigma);
                // Bad faces are only defined over allowable simplices; other systems are counted, not judged.
                if (!oracle.allowable(sigma, Notion::Poly)) {
                    for (const auto& B : e.flags) {
                        ++outside;
                        if (!complete_minimum(B)) ++outside_no_complete_min;
                    }
                    continue;
                }
                std::vector<std::optional<std::vector<PointId>>> bad_points(e.flags.size());
                for (std::size_t b = 0; b < e.flags.size(); ++b) {
                    const auto& B = e.flags[b];
                    ++tops;
                    const std::optional<BadFaceReport> found = complete_minimum(B);
                    if (!found) {
                        fail("no complete minimum critical face in " + key_text(B));
                        continue;
                    }
                    const BadFaceReport& rep = *found;
                    if (rep.bad_face) {
                        ++with_bad;
                        std::vector<PointId> pts;
                        for (auto i : *rep.bad_face) pts.push_back(B[i]);
                        std::sort(pts.begin(), pts.end());
                        bad_points[b] = pts;
                    }
                    bool faces_ok = true;
                    for (std::size_t i = 0; i < B.size(); ++i) {
                        std::vector<PointId> tau;
                        for (std::size_t j = 0; j < B.size(); ++j)
                            if (j != i) tau.push_back(B[j]);
                        std::sort(tau.begin(), tau.end());
                        const bool non_allowable = !oracle.allowable(tau, Notion::Poly);
                        faces_ok = faces_ok && !non_allowable;
                        const bool bad_in_tau = rep.bad_face && std::find(rep.bad_face->begin(), rep.bad_face->end(), i) ==
                                                                  rep.bad_face->end();
                        if (non_allowable != bad_in_tau) fail("codimension-one criterion at " + key_text(B));
                    }
                    std::vector<PointId> sorted_B = B;
                    std::sort(sorted_B.begin(), sorted_B.end());
                    const bool chain = oracle.allowable(sorted_B, Notion::Poly) && faces_ok;
                    if (chain == rep.bad_face.has_value()) fail("intersection-chain criterion at " + key_text(B));
                }
                // Cells sharing a non-allowable codimension-one face.
                std::map<std::vector<PointId>, std::vector<std::size_t>> by_face;
                for (std::size_t b = 0; b < e.flags.size(); ++b) {
                    std::vector<PointId> B = e.flags[b];
                    std::sort(B.begin(), B.end());
                    for (std::size_t i = 0; i < B.size(); ++i) {
                        auto tau = B;
                        tau.erase(tau.begin() + static_cast<std::ptrdiff_t>(i));
                        by_face[tau].push_back(b);
                    }
                }
                for (const auto& [tau, owners] : by_face) {
                    if (owners.size() < 2 || oracle.allowable(tau, Notion::Poly)) continue;
                    for (std::size_t a = 0; a + 1 < owners.size(); ++a) {
                        const auto& m1 = bad_points[owners[a]];
                        const auto& m2 = bad_points[owners[a + 1]];
                        if (!m1 || !m2 || *m1 != *m2 || !std::includes(tau.begin(), tau.end(), m1->begin(), m1->end()))
                            fail("shared face " + key_text(tau));
                    }
                }
            }
            std::vector<std::pair<std::string, std::string>> values{
                {"top_cells", str(tops)},
                {"cells_over_non_allowable", str(outside)},
                {"non_allowable_without_complete_minimum", str(outside_no_complete_min)},
                {"with_bad_face", str(with_bad)},
                {"failures", str(bad)}};
            if (!witness.empty()) values.emplace_back("witness", witness);
            r.checks.push_back({"bad faces(" + label + ")", bad == 0, values});
            return r;
        }));
    }
    return out;
}

SuiteResult prism_suite(SuiteContext& ctx) {
    SuiteResult out;
    for (const auto& [path, doc] : ctx.corpus()) {
        out.append(wrap_errors("prism_" + doc.name, [&, &doc = doc] {
            SuiteResult r;
            Workspace& ws = ctx.workspace(doc, "0");
            const FilteredComplex& X = ws.complex();
            std::size_t prisms = 0, cells = 0, bad = 0;
            std::string witness;
            for (SimplexId s = 0; s < X.num_simplices(); ++s) {
                try {
                    PrismTriangulation P = build_prism(ws.system(), X.simplex(s));
                    ++prisms;
                    cells += P.cells.size();
                } catch (const Error& e) {
                    ++bad;
                    if (witness.empty()) witness = e.what();
                }
            }
            std::vector<std::pair<std::string, std::string>> values{
                {"prisms", str(prisms)}, {"cells", str(cells)}, {"failures", str(bad)}};
            if (!witness.empty()) values.emplace_back("witness", witness);
            r.checks.push_back({"prisms(" + doc.name + ")", bad == 0, values});
            return r;
        }));
    }
    return out;
}

SuiteResult mv_suite(SuiteContext& ctx) {
    SuiteResult out;
    const auto start = Clock::now();
    static const std::vector<std::string> instances{"circle", "pinched_torus", "cone_circle", "suspension_circle",
                                                    "cone_two_circles", "suspension_two_circles"};
    static const std::vector<std::string> perversities{"0", "k:1", "k:-1"};
    std::size_t runs = 0;
    for (const auto& name : instances) {
        const ComplexDocument* doc = ctx.find(name);
        if (!doc) {
            out.checks.push_back({"mv(" + name + ")", false, {{"error", "missing from corpus"}}});
            continue;
        }
        for (const auto& spec : perversities)
            for (Notion notion : {Notion::Poly, Notion::GM})
                out.append(wrap_errors("mv_" + name, [&] {
                    SuiteResult r;
                    Workspace& ws = ctx.workspace(*doc, spec);
                    MVReport rep = mayer_vietoris_check(ws, default_cover(ws.complex()), notion, 1);
                    ++runs;
                    std::vector<std::pair<std::string, std::string>> values{
                        {"level", std::to_string(rep.level)},
                        {"small_chains_quasi_isomorphic", rep.quasi_isomorphic ? "yes" : "no"},
                        {"compositions_vanish", rep.compositions_vanish ? "yes" : "no"}};
                    for (const auto& n : rep.nodes)
                        values.emplace_back(n.name, str(n.dim) + "=" + str(n.rank_in) + "+" + str(n.rank_out));
                    r.checks.push_back({"mv(" + name + ", " + spec + ", " + notion_name(notion) + ")", rep.ok, values});
                    return r;
                }));
    }
    const double secs = seconds_since(start);
    out.checks.push_back({"mv coverage and runtime", runs >= 30 && secs < 60.0,
                          {{"runs", str(runs)}, {"under_60s", secs < 60.0 ? "yes" : "no"}}});
    return out;
}

SuiteResult compare_suite(SuiteContext& ctx) {
    SuiteResult out;
    for (const auto& [path, doc] : ctx.corpus()) {
        const auto distinct = ctx.distinct_perversities(doc, kTestedPerversities);
        for (const auto& spec : kTestedPerversities) {
            out.append(wrap_errors("compare_" + doc.name, [&, &doc = doc] {
                SuiteResult r;
                // Equal perversities share one run.
                std::string rep_spec = spec;
                const FilteredComplex& X = ctx.complex(doc);
                const Perversity p = parse_perversity(spec, X, &doc);
                for (const auto& d : distinct)
                    if (parse_perversity(d, X, &doc) == p) rep_spec = d;
                Workspace& ws = ctx.workspace(doc, rep_spec);
                CompareReport rep = main_theorem_compare(ws, 3, RingSpec{});
                std::vector<std::pair<std::string, std::string>> values;
                values.emplace_back("poly_stable_level", rep.poly_stable ? std::to_string(*rep.poly_stable) : "none");
                values.emplace_back("gm_stable_level", rep.gm_stable ? std::to_string(*rep.gm_stable) : "none");
                if (rep.poly_stable) values.emplace_back("poly", rep.poly[*rep.poly_stable].summary());
                if (rep.gm_stable) values.emplace_back("gm", rep.gm[*rep.gm_stable].summary());
                values.emplace_back("torsion_agrees", rep.agree_torsion ? "yes" : "no");
                r.checks.push_back({"compare(" + doc.name + ", " + spec + ")", rep.ok() && rep.agree_torsion, values});
                return r;
            }));
        }
    }
    const ComplexDocument* disc = ctx.find("barycentre_disc");
    if (!disc) {
        out.checks.push_back({"barycentre example", false, {{"error", "missing from corpus"}}});
        return out;
    }
    out.append(wrap_errors("barycentre example", [&] {
        SuiteResult r;
        Workspace& ws = ctx.workspace(*disc, "t");
        const CellComplex& K = ws.cells(Notion::Poly, 0);
        const CellMask& A = ws.allowable(Notion::Poly, 0);
        std::string witness;
        for (int d = K.top_dim(); d >= 0 && witness.empty(); --d)
            for (std::uint32_t i = 0; i < K.count(d); ++i) {
                const SimplexKey& c = K.cells[d][i];
                if (!A[d][i] || ws.oracle().allowable(c, Notion::GM)) continue;
                // A generator by itself: every facet allowable too.
                bool facets = true;
                for (const auto& [f, e] : cell_boundary(Z64{}, K, d, i)) facets = facets && A[d - 1][f];
                if (facets) {
                    witness = key_text(c);
                    break;
                }
            }
        CompareReport rep = main_theorem_compare(ws, 3, RingSpec{});
        r.checks.push_back({"barycentre example", !witness.empty() && rep.ok() && rep.agree_torsion,
                            {{"poly_not_gm_generator", witness.empty() ? "none" : witness},
                             {"poly", rep.poly_stable ? rep.poly[*rep.poly_stable].summary() : "unstable"},
                             {"gm", rep.gm_stable ? rep.gm[*rep.gm_stable].summary() : "unstable"}}});
        return r;
    }));
    return out;
}

SuiteResult geometry_suite(std::uint64_t seed, std::size_t instances) {
    SuiteResult out;
    std::mt19937_64 rng(seed ^ 0x6e0ULL);
    auto rint = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::size_t sampled = 0, witnessed = 0;
    std::vector<std::string> failures;
    for (std::size_t inst = 0; inst < instances; ++inst) {
        const int l = rint(1, 3);
        const int m = l + rint(0, 1);
        GeoSimplex Delta;
        do {
            Delta.vertices.clear();
            for (int i = 0; i <= l; ++i) {
                Point p;
                for (int k = 0; k < m; ++k) p.push_back(Rational(rint(-4, 4)));
                Delta.vertices.push_back(p);
            }
        } while (!affinely_independent(Delta.vertices));
        auto random_inside = [&] {
            std::vector<Rational> w;
            int total = 0;
            for (int i = 0; i <= l; ++i) {
                w.push_back(Rational(rint(0, 4)));
                total += static_cast<int>(w.back().get_num().get_si());
            }
            if (total == 0) {
                w[0] = 1;
                total = 1;
            }
            for (auto& x : w) x /= total;
            return combine(Delta.vertices, w);
        };
        GeoSimplex T;
        const int k = rint(0, l);
        do {
            T.vertices.clear();
            for (int i = 0; i <= k; ++i) T.vertices.push_back(random_inside());
        } while (!affinely_independent(T.vertices));
        GeoSimplex V;
        const std::uint32_t full = (1u << (l + 1)) - 1;
        const std::uint32_t mask = static_cast<std::uint32_t>(rint(1, static_cast<int>(full) - 1));
        for (int i = 0; i <= l; ++i)
            if (mask & (1u << i)) V.vertices.push_back(Delta.vertices[i]);

        PseudoBarycentreChoice choice;
        try {
            choice = sample_pseudobarycentre(Delta, {V}, {T}, {}, seed * 1000003ULL + inst);
        } catch (const Error&) {
            failures.push_back("instance " + std::to_string(inst) + ": sampling exhausted");
            continue;
        }
        ++sampled;
        // Halving search for a radius on which every perturbation keeps the predicate.
        Rational r2 = squared_diameter(Delta.vertices) / (1 << 20);
        bool found = false;
        for (int halving = 0; halving < 24 && !found; ++halving, r2 /= 4) {
            bool all = strong_general_position(choice.u, T, V, Delta);
            for (int t = 0; t < 50 && all; ++t) {
                Point dir(m, Rational(0));
                for (int i = 1; i <= l; ++i) {
                    const Rational c(rint(-64, 64), 64);
                    dir = point_add(dir, point_scale(point_sub(Delta.vertices[i], Delta.vertices[0]), c));
                }
                while (dot(dir, dir) >= r2) dir = point_scale(dir, Rational(1, 2));
                all = strong_general_position(point_add(choice.u, dir), T, V, Delta);
            }
            found = all;
        }
        if (found) {
            ++witnessed;
        } else {
            failures.push_back("instance " + std::to_string(inst) + ": no stability radius");
        }
    }
    const bool rate_ok = instances >= 100 && 100 * sampled >= 99 * instances;
    std::vector<std::pair<std::string, std::string>> v1{{"instances", str(instances)}, {"sampled", str(sampled)}};
    out.checks.push_back({"sampler success rate", rate_ok, v1});
    std::vector<std::pair<std::string, std::string>> v2{{"accepted", str(sampled)}, {"witnessed", str(witnessed)}};
    if (!failures.empty()) v2.emplace_back("first_failure", failures.front());
    out.checks.push_back({"stability witnesses", witnessed == sampled && sampled > 0, v2});
    return out;
}

SuiteResult run_suite(const std::string& name, const Corpus& corpus, std::uint64_t seed) {
    SuiteContext ctx(corpus, seed);
    if (name == "cone") return cone_suite(ctx);
    if (name == "mv") return mv_suite(ctx);
    if (name == "compare") return compare_suite(ctx);
    if (name == "geometry") return geometry_suite(seed);
    if (name == "subdivision") {
        SuiteResult r = homotopy_suite(ctx);
        r.append(preservation_suite(ctx));
        r.append(bad_face_suite(ctx));
        r.append(prism_suite(ctx));
        r.append(diameter_suite(ctx));
        return r;
    }
    throw Error(ErrorCode::ValidationError, "unknown suite '" + name + "'");
}

}  // namespace ihom
