#include "ihom/filtered_complex.hpp"
#include "ihom/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ihom {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::string label_list(const std::vector<std::int64_t>& labels, const Simplex& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(labels[s[i]]);
    }
    return out + "]";
}

void add_with_faces(const Simplex& s, std::set<Simplex>& out) {
    if (!out.insert(s).second) return;
    if (s.size() == 1) return;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
        add_with_faces(f, out);
    }
}

}  // namespace

std::optional<VertexId> FilteredComplex::vertex_of_label(std::int64_t label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<VertexId>(it - labels_.begin());
}

std::optional<SimplexId> FilteredComplex::find(const Simplex& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<SimplexId> FilteredComplex::maximal_simplices() const {
    std::vector<SimplexId> out;
    for (SimplexId s = 0; s < simplices_.size(); ++s)
        if (cofacets_[s].empty()) out.push_back(s);
    return out;
}

std::vector<SimplexId> FilteredComplex::simplices_of_dim(int d) const {
    std::vector<SimplexId> out;
    for (SimplexId s = 0; s < simplices_.size(); ++s)
        if (dim(s) == d) out.push_back(s);
    return out;
}

std::vector<StratumId> FilteredComplex::singular_strata() const {
    std::vector<StratumId> out;
    for (const auto& st : strata_)
        if (!st.regular) out.push_back(st.id);
    return out;
}

FilteredComplex build_complex(const RawComplex& raw) {
    FilteredComplex X;
    X.formal_dim_ = raw.formal_dim;

    std::set<std::int64_t> labels;
    for (const auto& s : raw.simplices) {
        if (s.empty()) throw Error(ErrorCode::InvalidComplex, "empty simplex");
        std::set<std::int64_t> distinct(s.begin(), s.end());
        if (distinct.size() != s.size()) throw Error(ErrorCode::InvalidComplex, "repeated vertex in a simplex");
        labels.insert(s.begin(), s.end());
    }
    if (labels.empty()) throw Error(ErrorCode::InvalidComplex, "no simplices");
    X.labels_.assign(labels.begin(), labels.end());

    auto to_internal = [&](const std::vector<std::int64_t>& s) {
        Simplex out;
        for (auto l : s) {
            auto v = X.vertex_of_label(l);
            if (!v) throw Error(ErrorCode::InvalidComplex, "unknown vertex " + std::to_string(l));
            out.push_back(*v);
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    std::set<Simplex> all;
    for (const auto& s : raw.simplices) add_with_faces(to_internal(s), all);
    X.simplices_.assign(all.begin(), all.end());
    for (SimplexId i = 0; i < X.simplices_.size(); ++i) {
        X.index_[X.simplices_[i]] = i;
        X.max_dim_ = std::max(X.max_dim_, X.dim(i));
    }
    if (raw.formal_dim < X.max_dim_)
        throw Error(ErrorCode::InvalidComplex, "formal_dim " + std::to_string(raw.formal_dim) +
                                                   " is below the simplex dimension " + std::to_string(X.max_dim_));

    const std::size_t n = X.simplices_.size();
    X.facets_.assign(n, {});
    X.cofacets_.assign(n, {});
    for (SimplexId i = 0; i < n; ++i) {
        const Simplex& s = X.simplices_[i];
        if (s.size() == 1) continue;
        for (std::size_t k = 0; k < s.size(); ++k) {
            Simplex f = s;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(k));
            SimplexId fi = X.index_.at(f);
            X.facets_[i].push_back(fi);
            X.cofacets_[fi].push_back(i);
        }
        std::sort(X.facets_[i].begin(), X.facets_[i].end());
    }
    for (auto& c : X.cofacets_) std::sort(c.begin(), c.end());

    X.filtration_.assign(n, raw.formal_dim);
    if (!raw.vertex_filtration.empty()) {
        std::vector<int> vf(X.labels_.size(), raw.formal_dim);
        for (const auto& [label, value] : raw.vertex_filtration) {
            auto v = X.vertex_of_label(label);
            if (!v) throw Error(ErrorCode::InvalidComplex, "filtration names unknown vertex " + std::to_string(label));
            vf[*v] = value;
        }
        for (SimplexId i = 0; i < n; ++i) {
            int m = vf[X.simplices_[i][0]];
            for (auto v : X.simplices_[i]) m = std::max(m, vf[v]);
            X.filtration_[i] = m;
        }
    }
    for (const auto& [s, value] : raw.simplex_filtration) {
        auto id = X.find(to_internal(s));
        if (!id) throw Error(ErrorCode::InvalidComplex, "filtration names a simplex not in the complex");
        X.filtration_[*id] = value;
    }
    for (SimplexId i = 0; i < n; ++i) {
        int f = X.filtration_[i];
        if (f < 0 || f > raw.formal_dim)
            throw Error(ErrorCode::InvalidComplex, "filtration value " + std::to_string(f) + " of " +
                                                       label_list(X.labels_, X.simplices_[i]) + " out of range");
    }
    for (SimplexId i = 0; i < n; ++i)
        for (SimplexId f : X.facets_[i])
            if (X.filtration_[f] > X.filtration_[i])
                throw Error(ErrorCode::NonClosedFiltration,
                            "X_" + std::to_string(X.filtration_[i]) + " contains " +
                                label_list(X.labels_, X.simplices_[i]) + " but not its face " +
                                label_list(X.labels_, X.simplices_[f]));
    if (std::none_of(X.filtration_.begin(), X.filtration_.end(), [&](int f) { return f == raw.formal_dim; }))
        throw Error(ErrorCode::EmptyRegularPart, "no simplex has filtration value " + std::to_string(raw.formal_dim));

    if (raw.coordinates.empty()) {
        const std::size_t m = X.labels_.size();
        X.coords_.assign(m, Point(m, Rational(0)));
        for (std::size_t v = 0; v < m; ++v) X.coords_[v][v] = 1;
    } else {
        X.coords_.resize(X.labels_.size());
        std::size_t m = raw.coordinates.begin()->second.size();
        for (VertexId v = 0; v < X.labels_.size(); ++v) {
            auto it = raw.coordinates.find(X.labels_[v]);
            if (it == raw.coordinates.end())
                throw Error(ErrorCode::InvalidGeometry, "no coordinates for vertex " + std::to_string(X.labels_[v]));
            if (it->second.size() != m) throw Error(ErrorCode::InvalidGeometry, "coordinate dimensions differ");
            X.coords_[v] = it->second;
        }
        for (const auto& [label, p] : raw.coordinates)
            if (!X.vertex_of_label(label))
                throw Error(ErrorCode::InvalidGeometry, "coordinates for unknown vertex " + std::to_string(label));
    }
    if (X.ambient_dim() > 8)
        throw Error(ErrorCode::InvalidGeometry, "ambient dimension " + std::to_string(X.ambient_dim()) + " exceeds 8");

    X.strata_ = compute_strata(X);
    X.stratum_of_.assign(n, 0);
    for (const auto& st : X.strata_)
        for (SimplexId s : st.simplices) X.stratum_of_[s] = st.id;
    return X;
}

std::vector<Stratum> compute_strata(const FilteredComplex& X) {
    const std::size_t n = X.num_simplices();
    UnionFind uf(n);
    for (SimplexId i = 0; i < n; ++i)
        for (SimplexId f : X.facets(i))
            if (X.filtration(f) == X.filtration(i)) uf.unite(i, f);
    // Roots are minimal ids, so ordering by (value, root) is deterministic.
    std::map<std::pair<int, std::uint32_t>, std::vector<SimplexId>> groups;
    for (SimplexId i = 0; i < n; ++i) groups[{X.filtration(i), uf.find(i)}].push_back(i);
    std::vector<Stratum> out;
    for (auto& [key, members] : groups) {
        Stratum st;
        st.id = static_cast<StratumId>(out.size());
        st.dim = key.first;
        st.codim = X.formal_dim() - key.first;
        st.simplices = std::move(members);
        st.regular = st.codim == 0;
        out.push_back(std::move(st));
    }
    return out;
}

RawComplex to_raw(const FilteredComplex& X) {
    RawComplex raw;
    raw.formal_dim = X.formal_dim();
    for (SimplexId s : X.maximal_simplices()) {
        std::vector<std::int64_t> labels;
        for (auto v : X.simplex(s)) labels.push_back(X.vertex_label(v));
        raw.simplices.push_back(labels);
    }
    for (SimplexId s = 0; s < X.num_simplices(); ++s) {
        if (X.filtration(s) == X.formal_dim()) continue;
        std::vector<std::int64_t> labels;
        for (auto v : X.simplex(s)) labels.push_back(X.vertex_label(v));
        raw.simplex_filtration.emplace_back(labels, X.filtration(s));
    }
    for (VertexId v = 0; v < X.num_vertices(); ++v) raw.coordinates[X.vertex_label(v)] = X.coordinate(v);
    return raw;
}

namespace {

// Shared by cone and suspension: old points get a zero in the new last coordinate.
RawComplex lifted(const FilteredComplex& X, std::int64_t& next_label) {
    RawComplex raw;
    raw.formal_dim = X.formal_dim() + 1;
    for (SimplexId s = 0; s < X.num_simplices(); ++s) {
        std::vector<std::int64_t> labels;
        for (auto v : X.simplex(s)) labels.push_back(X.vertex_label(v));
        raw.simplex_filtration.emplace_back(labels, X.filtration(s) + 1);
    }
    for (VertexId v = 0; v < X.num_vertices(); ++v) {
        Point p = X.coordinate(v);
        p.push_back(0);
        raw.coordinates[X.vertex_label(v)] = p;
    }
    next_label = X.vertex_labels().back() + 1;
    return raw;
}

void add_apex(const FilteredComplex& X, RawComplex& raw, std::int64_t apex, const Rational& height) {
    for (SimplexId s = 0; s < X.num_simplices(); ++s) {
        std::vector<std::int64_t> labels{apex};
        for (auto v : X.simplex(s)) labels.push_back(X.vertex_label(v));
        if (X.cofacets(s).empty()) raw.simplices.push_back(labels);
        raw.simplex_filtration.emplace_back(labels, X.filtration(s) + 1);
    }
    raw.simplex_filtration.emplace_back(std::vector<std::int64_t>{apex}, 0);
    Point a(X.ambient_dim() + 1, Rational(0));
    a.back() = height;
    raw.coordinates[apex] = a;
}

}  // namespace

FilteredComplex cone_complex(const FilteredComplex& X) {
    std::int64_t apex = 0;
    RawComplex raw = lifted(X, apex);
    add_apex(X, raw, apex, 1);
    return build_complex(raw);
}

FilteredComplex suspension_complex(const FilteredComplex& X) {
    std::int64_t apex = 0;
    RawComplex raw = lifted(X, apex);
    add_apex(X, raw, apex, 1);
    add_apex(X, raw, apex + 1, -1);
    return build_complex(raw);
}

FilteredComplex interval_product(const FilteredComplex& X) {
    RawComplex raw;
    raw.formal_dim = X.formal_dim() + 1;
    const std::int64_t V = static_cast<std::int64_t>(X.num_vertices());
    // Label of (t, v) is t * V + v over internal ids.
    auto lab = [&](int t, VertexId v) { return t * V + static_cast<std::int64_t>(v); };
    std::set<std::vector<std::int64_t>> cells;
    for (SimplexId s : X.maximal_simplices()) {
        const Simplex& sv = X.simplex(s);
        for (std::size_t j = 0; j < sv.size(); ++j) {
            std::vector<std::int64_t> cell;
            for (std::size_t i = 0; i <= j; ++i) cell.push_back(lab(0, sv[i]));
            for (std::size_t i = j; i < sv.size(); ++i) cell.push_back(lab(1, sv[i]));
            raw.simplices.push_back(cell);
            const std::size_t k = cell.size();
            for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
                std::vector<std::int64_t> f;
                for (std::size_t i = 0; i < k; ++i)
                    if (mask & (1u << i)) f.push_back(cell[i]);
                cells.insert(f);
            }
        }
    }
    for (const auto& c : cells) {
        Simplex proj;
        for (auto l : c) proj.push_back(static_cast<VertexId>(l % V));
        std::sort(proj.begin(), proj.end());
        proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
        raw.simplex_filtration.emplace_back(c, X.filtration(*X.find(proj)) + 1);
    }
    for (VertexId v = 0; v < X.num_vertices(); ++v)
        for (int t = 0; t < 2; ++t) {
            Point p{Rational(t)};
            p.insert(p.end(), X.coordinate(v).begin(), X.coordinate(v).end());
            raw.coordinates[lab(t, v)] = p;
        }
    return build_complex(raw);
}

ExtInt top_value(const Stratum& s) { return ExtInt(s.codim - 2); }

Perversity gm_perversity(const FilteredComplex& X, GMPreset preset) {
    std::vector<ExtInt> v;
    for (const auto& st : X.strata()) {
        if (st.regular) {
            v.emplace_back(0);
            continue;
        }
        std::int64_t c = st.codim;
        switch (preset) {
            case GMPreset::Zero: v.emplace_back(0); break;
            // Floor and ceiling of (c-2)/2; codim 1 gives -1 and -0 respectively.
            case GMPreset::LowerMiddle: v.emplace_back(c >= 2 ? (c - 2) / 2 : -1); break;
            case GMPreset::UpperMiddle: v.emplace_back(c >= 2 ? (c - 1) / 2 : 0); break;
            case GMPreset::Top: v.emplace_back(c - 2); break;
        }
    }
    return Perversity(std::move(v), PerversityTag::GM);
}

Perversity codimensional_perversity(const FilteredComplex& X, const std::map<int, ExtInt>& by_codim) {
    std::vector<ExtInt> v;
    for (const auto& st : X.strata()) {
        if (st.regular) {
            v.emplace_back(0);
            continue;
        }
        auto it = by_codim.find(st.codim);
        if (it == by_codim.end())
            throw Error(ErrorCode::ValidationError, "perversity has no value for codimension " + std::to_string(st.codim));
        v.push_back(it->second);
    }
    return Perversity(std::move(v), PerversityTag::Codimensional);
}

Perversity constant_perversity(const FilteredComplex& X, ExtInt k) {
    std::vector<ExtInt> v;
    for (const auto& st : X.strata()) v.push_back(st.regular ? ExtInt(0) : k);
    return Perversity(std::move(v), PerversityTag::Codimensional);
}

Perversity dual_perversity(const Perversity& p, const FilteredComplex& X) {
    std::vector<ExtInt> v;
    for (const auto& st : X.strata()) v.push_back(st.regular ? ExtInt(0) : top_value(st) - p(st.id));
    PerversityTag tag = p.tag() == PerversityTag::GM ? PerversityTag::Codimensional : p.tag();
    return Perversity(std::move(v), tag);
}

bool perversity_valid(const Perversity& p, const FilteredComplex& X) {
    if (p.values().size() != X.strata().size()) return false;
    std::map<int, ExtInt> by_codim;
    for (const auto& st : X.strata()) {
        if (st.regular && p(st.id) != ExtInt(0)) return false;
        if (st.regular) continue;
        if (p.tag() == PerversityTag::General) continue;
        auto [it, fresh] = by_codim.emplace(st.codim, p(st.id));
        if (!fresh && it->second != p(st.id)) return false;
    }
    if (p.tag() != PerversityTag::GM) return true;
    // p(2) = 0 and unit steps force 0 <= p(c) <= c - 2, and growth of at most the codimension gap.
    const std::pair<const int, ExtInt>* prev = nullptr;
    for (const auto& entry : by_codim) {
        const auto& [c, val] = entry;
        if (!val.finite()) return false;
        if (c < 2) continue;
        if (val < ExtInt(0) || ExtInt(c - 2) < val) return false;
        if (prev && (val < prev->second || ExtInt(c - prev->first) < val - prev->second)) return false;
        prev = &entry;
    }
    return true;
}

}  // namespace ihom
