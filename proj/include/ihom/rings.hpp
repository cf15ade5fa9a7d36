#pragma once

#include "ihom/errors.hpp"
#include "ihom/rational.hpp"

#include <cstdint>
#include <string>
#include <tuple>

namespace ihom {

/// Integers in checked 64-bit arithmetic; throws Overflow.
struct Z64 {
    using T = std::int64_t;
    static constexpr bool is_field = false;
    static T zero() { return 0; }
    static T one() { return 1; }
    T add(T a, T b) const {
        T r;
        if (__builtin_add_overflow(a, b, &r)) throw Overflow();
        return r;
    }
    T sub(T a, T b) const {
        T r;
        if (__builtin_sub_overflow(a, b, &r)) throw Overflow();
        return r;
    }
    T mul(T a, T b) const {
        T r;
        if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
        return r;
    }
    T neg(T a) const { return sub(0, a); }
    static bool is_zero(T a) { return a == 0; }
    static bool is_unit(T a) { return a == 1 || a == -1; }
    bool divides(T a, T b) const { return a == 1 || a == -1 || b % a == 0; }
    /// b / a, exact.
    T div(T b, T a) const {
        if (a == -1) return neg(b);
        return b / a;
    }
    /// g = s a + t b with g = gcd >= 0.
    std::tuple<T, T, T> xgcd(T a, T b) const {
        T old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            T q = old_r / r;
            T tmp = sub(old_r, mul(q, r));
            old_r = r;
            r = tmp;
            tmp = sub(old_s, mul(q, s));
            old_s = s;
            s = tmp;
            tmp = sub(old_t, mul(q, t));
            old_t = t;
            t = tmp;
        }
        if (old_r < 0) return {neg(old_r), neg(old_s), neg(old_t)};
        return {old_r, old_s, old_t};
    }
    static BigInt to_big(T a) { return BigInt(static_cast<long>(a)); }
    T from_int(std::int64_t v) const { return v; }
    static std::string name() { return "Z"; }
};

/// Arbitrary-precision integers.
struct BigZ {
    using T = BigInt;
    static constexpr bool is_field = false;
    static T zero() { return 0; }
    static T one() { return 1; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    static bool is_zero(const T& a) { return a == 0; }
    static bool is_unit(const T& a) { return a == 1 || a == -1; }
    bool divides(const T& a, const T& b) const { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }
    T div(const T& b, const T& a) const {
        T q;
        mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
        return q;
    }
    std::tuple<T, T, T> xgcd(const T& a, const T& b) const {
        T g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return {g, s, t};
    }
    static BigInt to_big(const T& a) { return a; }
    T from_int(std::int64_t v) const { return T(static_cast<long>(v)); }
    static std::string name() { return "Z"; }
};

/// Prime field Z/p with p < 2^31.
struct Fp {
    using T = std::uint64_t;
    static constexpr bool is_field = true;
    std::uint64_t p = 2;
    static T zero() { return 0; }
    static T one() { return 1; }
    T add(T a, T b) const { return (a + b) % p; }
    T sub(T a, T b) const { return (a + p - b) % p; }
    T mul(T a, T b) const { return (a * b) % p; }
    T neg(T a) const { return a == 0 ? 0 : p - a; }
    static bool is_zero(T a) { return a == 0; }
    static bool is_unit(T a) { return a != 0; }
    bool divides(T a, T) const { return a != 0; }
    T inv(T a) const {
        T r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }
    T div(T b, T a) const { return mul(b, inv(a)); }
    std::tuple<T, T, T> xgcd(T a, T) const { return {1, inv(a), 0}; }
    static BigInt to_big(T a) { return BigInt(static_cast<unsigned long>(a)); }
    T from_int(std::int64_t v) const {
        std::int64_t m = v % static_cast<std::int64_t>(p);
        return static_cast<T>(m < 0 ? m + static_cast<std::int64_t>(p) : m);
    }
    std::string name() const { return "Zp:" + std::to_string(p); }
};

bool is_prime(std::uint64_t p);

}  // namespace ihom
