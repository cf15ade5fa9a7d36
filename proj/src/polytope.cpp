#include "ihom/polytope.hpp"
#include "ihom/lp.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace ihom {

Polytope::Polytope(RMat A, RVec b, RMat E, std::size_t nvars)
    : nvars_(nvars), A_(std::move(A)), b_(std::move(b)), E_(std::move(E)) {}

Point Polytope::output(const RVec& z) const {
    Point y(E_.size(), Rational(0));
    for (std::size_t i = 0; i < E_.size(); ++i)
        for (std::size_t j = 0; j < nvars_; ++j)
            if (E_[i][j] != 0 && z[j] != 0) y[i] += E_[i][j] * z[j];
    return y;
}

void Polytope::enumerate() const {
    if (enumerated_) return;
    enumerated_ = true;
    // Basic feasible solutions: reduce the equality system, then try every column basis.
    RMat aug = A_;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b_[i]);
    Echelon e = rref(aug, nvars_ + 1);
    if (!e.pivots.empty() && e.pivots.back() == nvars_) return;  // inconsistent
    const RMat& R = e.rows;
    const std::size_t r = R.size();
    std::set<RVec, PointLess> found;
    std::vector<std::size_t> cols(r);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == r) {
            RMat sub(r, RVec(r + 1));
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < r; ++j) sub[i][j] = R[i][cols[j]];
                sub[i][r] = R[i][nvars_];
            }
            Echelon s = rref(sub, r + 1);
            if (s.pivots.size() != r || s.pivots.back() == r) return;
            RVec z(nvars_, Rational(0));
            for (std::size_t i = 0; i < r; ++i) {
                if (s.rows[i][r] < 0) return;
                z[cols[s.pivots[i]]] = s.rows[i][r];
            }
            found.insert(std::move(z));
            return;
        }
        for (std::size_t c = start; c + (r - depth) <= nvars_; ++c) {
            cols[depth] = c;
            rec(c + 1, depth + 1);
        }
    };
    rec(0, 0);
    zverts_.assign(found.begin(), found.end());
    for (const auto& z : zverts_) yverts_.push_back(output(z));
}

const std::vector<RVec>& Polytope::param_vertices() const {
    enumerate();
    return zverts_;
}

const std::vector<Point>& Polytope::vertices() const {
    enumerate();
    return yverts_;
}

ExtInt Polytope::dim() const { return affine_dim(vertices()); }

bool Polytope::contains(const Point& y) const {
    RMat A = A_;
    RVec b = b_;
    for (std::size_t i = 0; i < E_.size(); ++i) {
        A.push_back(E_[i]);
        b.push_back(y[i]);
    }
    return lp_feasible(A, b);
}

bool Polytope::strictly_positive_on(const std::vector<std::size_t>& coords) const {
    const auto& vs = param_vertices();
    if (vs.empty()) return false;
    for (auto c : coords)
        if (std::none_of(vs.begin(), vs.end(), [&](const RVec& z) { return z[c] > 0; })) return false;
    return true;
}

std::vector<std::vector<std::size_t>> Polytope::triangulate() const {
    const auto& zs = param_vertices();
    const auto& ys = vertices();
    std::vector<std::vector<std::size_t>> out;
    if (zs.empty()) return out;
    // Vertices are sorted lexicographically in parameter space; the pulled vertex is the smallest index.
    std::function<void(const std::vector<std::size_t>&, std::int64_t, std::vector<std::size_t>)> rec =
        [&](const std::vector<std::size_t>& face, std::int64_t d, std::vector<std::size_t> apex) {
            if (static_cast<std::int64_t>(face.size()) == d + 1) {
                std::vector<std::size_t> simplex = apex;
                simplex.insert(simplex.end(), face.begin(), face.end());
                std::sort(simplex.begin(), simplex.end());
                out.push_back(simplex);
                return;
            }
            std::size_t v = face.front();
            std::set<std::vector<std::size_t>> facets;
            for (std::size_t j = 0; j < nvars_; ++j) {
                std::vector<std::size_t> g;
                for (auto i : face)
                    if (zs[i][j] == 0) g.push_back(i);
                if (g.empty() || g.size() == face.size()) continue;
                if (std::find(g.begin(), g.end(), v) != g.end()) continue;
                std::vector<Point> pts;
                for (auto i : g) pts.push_back(ys[i]);
                if (affine_dim(pts) == ExtInt(d - 1)) facets.insert(g);
            }
            apex.push_back(v);
            for (const auto& g : facets) rec(g, d - 1, apex);
        };
    std::vector<std::size_t> all(zs.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    rec(all, dim().value(), {});
    return out;
}

}  // namespace ihom
