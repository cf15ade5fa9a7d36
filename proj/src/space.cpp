#include "ihom/space.hpp"
#include "ihom/errors.hpp"

#include <algorithm>

namespace ihom {

Space::Space(const FilteredComplex& X) : X_(&X) {
    for (VertexId v = 0; v < X.num_vertices(); ++v) {
        ids_[X.coordinate(v)] = v;
        points_.push_back(X.coordinate(v));
        carriers_.push_back(*X.find(Simplex{v}));
    }
    if (ids_.size() != X.num_vertices()) throw Error(ErrorCode::InvalidGeometry, "two vertices share coordinates");
    auto maximal = X.maximal_simplices();
    std::vector<GeoSimplex> geo;
    for (SimplexId s : maximal) {
        std::vector<Point> pts;
        for (auto v : X.simplex(s)) pts.push_back(X.coordinate(v));
        if (!affinely_independent(pts)) throw Error(ErrorCode::InvalidGeometry, "a simplex of the complex is degenerate");
        geo.push_back(GeoSimplex{pts});
    }
    for (std::size_t a = 0; a < maximal.size(); ++a)
        for (std::size_t b = a + 1; b < maximal.size(); ++b) {
            const Simplex& sa = X.simplex(maximal[a]);
            const Simplex& sb = X.simplex(maximal[b]);
            Polytope I = simplex_intersection(geo[a], geo[b]);
            for (const auto& z : I.param_vertices())
                for (std::size_t i = 0; i < sa.size(); ++i)
                    if (z[i] != 0 && !std::binary_search(sb.begin(), sb.end(), sa[i]))
                        throw Error(ErrorCode::InvalidGeometry, "two simplices meet outside a common face");
        }
}

const AffineFrame& Space::frame(SimplexId s) const {
    auto it = frames_.find(s);
    if (it != frames_.end()) return *it->second;
    std::vector<Point> pts;
    for (auto v : X_->simplex(s)) pts.push_back(X_->coordinate(v));
    auto& slot = frames_[s];
    slot = std::make_unique<AffineFrame>(std::move(pts));
    return *slot;
}

std::optional<RVec> Space::cell_coords(const Point& p, SimplexId s) const {
    auto beta = frame(s).coords(p);
    if (!beta) return std::nullopt;
    for (const auto& q : *beta)
        if (q < 0) return std::nullopt;
    return beta;
}

std::optional<SimplexId> Space::locate_in(const Point& p, SimplexId s) const {
    auto beta = cell_coords(p, s);
    if (!beta) return std::nullopt;
    Simplex support;
    const Simplex& verts = X_->simplex(s);
    for (std::size_t i = 0; i < verts.size(); ++i)
        if ((*beta)[i] > 0) support.push_back(verts[i]);
    return X_->find(support);
}

std::optional<PointId> Space::find(const Point& p) const {
    auto it = ids_.find(p);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

PointId Space::intern_in(const Point& p, SimplexId hint) {
    if (auto id = find(p)) return *id;
    auto c = locate_in(p, hint);
    if (!c) return intern(p);
    PointId id = static_cast<PointId>(points_.size());
    points_.push_back(p);
    carriers_.push_back(*c);
    ids_[p] = id;
    return id;
}

PointId Space::intern(const Point& p) {
    if (auto id = find(p)) return *id;
    if (p.size() != X_->ambient_dim()) throw Error(ErrorCode::InvalidGeometry, "point has the wrong ambient dimension");
    for (SimplexId s : X_->maximal_simplices()) {
        auto c = locate_in(p, s);
        if (!c) continue;
        PointId id = static_cast<PointId>(points_.size());
        points_.push_back(p);
        carriers_.push_back(*c);
        ids_[p] = id;
        return id;
    }
    throw Error(ErrorCode::InvalidGeometry, "point lies outside |X|");
}

}  // namespace ihom
