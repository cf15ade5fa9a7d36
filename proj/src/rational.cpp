#include "ihom/rational.hpp"

#include <cctype>

namespace ihom {

namespace {
bool is_integer_text(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}
}  // namespace

std::optional<Rational> parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) return std::nullopt;
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    BigInt n(num, 10), d(den, 10);
    if (d == 0) return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Point point_sub(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Point point_add(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Point point_scale(const Point& a, const Rational& s) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

Rational dot(const Point& a, const Point& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational squared_distance(const Point& a, const Point& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

Point combine(const std::vector<Point>& pts, const std::vector<Rational>& w) {
    Point r(pts.empty() ? 0 : pts[0].size(), Rational(0));
    for (std::size_t j = 0; j < pts.size(); ++j) {
        if (w[j] == 0) continue;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += w[j] * pts[j][i];
    }
    return r;
}

Point centroid(const std::vector<Point>& pts) {
    std::vector<Rational> w(pts.size(), Rational(1, static_cast<unsigned long>(pts.size())));
    return combine(pts, w);
}

bool PointLess::operator()(const Point& a, const Point& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

}  // namespace ihom
