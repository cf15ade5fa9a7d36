#pragma once

#include "ihom/document.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace ihom {

struct CheckRecord {
    std::string name;
    bool pass = false;
    std::vector<std::pair<std::string, std::string>> values;
};

struct SuiteResult {
    std::vector<CheckRecord> checks;
    bool pass() const;
    std::size_t failures() const;
    void append(SuiteResult other);
};

using Corpus = std::vector<std::pair<std::filesystem::path, ComplexDocument>>;

/// Workspaces shared between suites, keyed by complex name and perversity spec.
class SuiteContext {
public:
    SuiteContext(Corpus corpus, std::uint64_t seed) : corpus_(std::move(corpus)), seed_(seed) {}

    const Corpus& corpus() const { return corpus_; }
    std::uint64_t seed() const { return seed_; }
    const ComplexDocument* find(const std::string& name) const;
    const FilteredComplex& complex(const ComplexDocument& doc);
    Workspace& workspace(const ComplexDocument& doc, const std::string& perversity);
    /// Every workspace created so far, labelled "complex/perversity".
    std::vector<std::pair<std::string, Workspace*>> workspaces();
    /// Distinct perversities (by value) among specs for this complex.
    std::vector<std::string> distinct_perversities(const ComplexDocument& doc, const std::vector<std::string>& specs);
    /// A workspace outside the corpus, kept so the sweeps over built systems see it.
    Workspace& scratch(const std::string& label, const FilteredComplex& X, const Perversity& p);

private:
    Corpus corpus_;
    std::uint64_t seed_;
    std::map<std::string, std::unique_ptr<FilteredComplex>> complexes_;
    std::map<std::pair<std::string, std::string>, std::unique_ptr<Workspace>> workspaces_;
    std::vector<std::pair<std::string, std::unique_ptr<Workspace>>> scratch_;
};

/// Cone formula at the apex for D p(v) in {-2,-1,0,1}, both notions.
SuiteResult cone_suite(SuiteContext& ctx);
/// id - sd = T d + d T and d sd = sd d on random chains.
SuiteResult homotopy_suite(SuiteContext& ctx, std::size_t chains = 208);
/// Cells of sd(sigma) and T(sigma) stay allowable for allowable sigma.
SuiteResult preservation_suite(SuiteContext& ctx);
/// Diameter bound and the remaining system invariants for every built system.
SuiteResult diameter_suite(SuiteContext& ctx);
/// Minimum critical face, complete-face shape, codimension-one criterion and sharing, over
/// every system of an allowable simplex built so far (after building those of the corpus
/// simplices). Cells over non-allowable simplices are only counted.
SuiteResult bad_face_suite(SuiteContext& ctx);
/// Prism triangulations of every built system.
SuiteResult prism_suite(SuiteContext& ctx);
/// Long exact sequence ranks for a cover of each instance.
SuiteResult mv_suite(SuiteContext& ctx);
/// Stabilized homology of both notions agrees; the barycentre example separates them at level 0.
SuiteResult compare_suite(SuiteContext& ctx);
/// Sampler success rate and stability witnesses on random instances.
SuiteResult geometry_suite(std::uint64_t seed, std::size_t instances = 120);

/// cone | mv | subdivision | compare | geometry
SuiteResult run_suite(const std::string& name, const Corpus& corpus, std::uint64_t seed);

}  // namespace ihom
