#include "ihom/chain.hpp"

#include <algorithm>

namespace ihom {

int normalize_tuple(std::vector<PointId>& t) {
    int sign = 1;
    // Insertion sort counting transpositions; tuples are short.
    for (std::size_t i = 1; i < t.size(); ++i)
        for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
            if (t[j - 1] == t[j]) return 0;
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    return sign;
}

Chain Chain::simplex(const std::vector<PointId>& tuple, std::int64_t coeff) {
    Chain c(static_cast<int>(tuple.size()) - 1);
    c.add(tuple, coeff);
    return c;
}

std::int64_t Chain::coefficient(const SimplexKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? 0 : it->second;
}

void Chain::add(const std::vector<PointId>& tuple, std::int64_t coeff) {
    if (coeff == 0) return;
    std::vector<PointId> t = tuple;
    int sign = normalize_tuple(t);
    if (sign == 0) return;
    if (terms_.empty()) degree_ = static_cast<int>(t.size()) - 1;
    auto [it, fresh] = terms_.emplace(std::move(t), 0);
    it->second += sign * coeff;
    if (it->second == 0) terms_.erase(it);
}

Chain& Chain::operator+=(const Chain& other) {
    for (const auto& [k, c] : other.terms_) add(k, c);
    return *this;
}

Chain& Chain::operator-=(const Chain& other) {
    for (const auto& [k, c] : other.terms_) add(k, -c);
    return *this;
}

Chain Chain::operator-() const { return scaled(-1); }

Chain Chain::scaled(std::int64_t k) const {
    Chain out(degree_);
    if (k == 0) return out;
    out.terms_ = terms_;
    for (auto& [key, c] : out.terms_) c *= k;
    return out;
}

Chain Chain::boundary() const {
    Chain out(degree_ - 1);
    if (degree_ == 0) return out;
    for (const auto& [key, c] : terms_)
        for (std::size_t i = 0; i < key.size(); ++i) {
            std::vector<PointId> f = key;
            f.erase(f.begin() + static_cast<std::ptrdiff_t>(i));
            out.add(f, (i % 2 == 0) ? c : -c);
        }
    return out;
}

Chain Chain::cone(PointId u) const {
    Chain out(degree_ + 1);
    for (const auto& [key, c] : terms_) {
        std::vector<PointId> t;
        t.reserve(key.size() + 1);
        t.push_back(u);
        t.insert(t.end(), key.begin(), key.end());
        out.add(t, c);
    }
    return out;
}

}  // namespace ihom
