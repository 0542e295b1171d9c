#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "skeinkit/error.hpp"

namespace skeinkit {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Degree sentinels for the zero polynomial.
inline constexpr int kNegInf = std::numeric_limits<int>::min();
inline constexpr int kPosInf = std::numeric_limits<int>::max();

struct DegreeBounds {
    int max_deg = kNegInf;
    int min_deg = kPosInf;

    bool operator==(const DegreeBounds&) const = default;
};

// Sparse Laurent polynomial in the variable A with exact integer coefficients.
// Invariant: no stored coefficient is zero.
class LaurentPoly {
public:
    LaurentPoly() = default;

    explicit LaurentPoly(Int constant) {
        if (constant != 0) terms_[0] = std::move(constant);
    }

    static LaurentPoly monomial(int exp, Int coeff = 1) {
        LaurentPoly p;
        if (coeff != 0) p.terms_[exp] = std::move(coeff);
        return p;
    }

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(Int(1)); }

    bool is_zero() const { return terms_.empty(); }

    const std::map<int, Int>& terms() const { return terms_; }

    Int coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(int exp, const Int& c) {
        if (c == 0) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_[exp] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    // Multiplication by A^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
        return r;
    }

    LaurentPoly scaled(const Int& s) const {
        LaurentPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }

    // Total order usable as a map key.
    bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }

    // Canonical text: descending exponents, e.g. "-A^2 - A^-2".
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Int abs_c = c < 0 ? Int(-c) : c;
            if (first) {
                if (c < 0) out << "-";
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (abs_c != 1 || e == 0) out << abs_c.str();
            if (e != 0) {
                if (abs_c != 1) out << "*";
                out << "A";
                if (e != 1) out << "^" << e;
            }
        }
        return out.str();
    }

    // JSON-ready list of [exponent, coefficient-string] pairs, descending.
    std::vector<std::pair<int, std::string>> term_list() const {
        std::vector<std::pair<int, std::string>> v;
        v.reserve(terms_.size());
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            v.emplace_back(it->first, it->second.str());
        return v;
    }

private:
    std::map<int, Int> terms_;
};

inline DegreeBounds max_min_degree(const LaurentPoly& p) {
    if (p.is_zero()) return {};
    return {p.terms().rbegin()->first, p.terms().begin()->first};
}

// Exact division: returns p / q, throwing INEXACT_DIVISION if q does not
// divide p in Z[A, A^-1].
inline LaurentPoly exact_divide(const LaurentPoly& p, const LaurentPoly& q) {
    if (q.is_zero()) throw Error(ErrorCode::INEXACT_DIVISION, "division by zero polynomial");
    if (p.is_zero()) return LaurentPoly::zero();
    LaurentPoly rem = p;
    LaurentPoly quot;
    const int q_deg = max_min_degree(q).max_deg;
    const Int& q_lead = q.terms().rbegin()->second;
    // An exact quotient has min exponent min(p) - min(q); passing below that
    // means q does not divide p.
    const int quot_min = max_min_degree(p).min_deg - max_min_degree(q).min_deg;
    while (!rem.is_zero()) {
        const int r_deg = max_min_degree(rem).max_deg;
        const Int& r_lead = rem.terms().rbegin()->second;
        if (r_deg - q_deg < quot_min)
            throw Error(ErrorCode::INEXACT_DIVISION, "remainder below quotient range");
        if (r_lead % q_lead != 0)
            throw Error(ErrorCode::INEXACT_DIVISION, "leading coefficient does not divide");
        LaurentPoly t = LaurentPoly::monomial(r_deg - q_deg, r_lead / q_lead);
        quot += t;
        rem = rem - t * q;
        if (!rem.is_zero() && max_min_degree(rem).max_deg >= r_deg)
            throw Error(ErrorCode::INEXACT_DIVISION, "non-terminating division");
    }
    return quot;
}

namespace detail {

// gcd of all coefficients (positive), 0 for the zero polynomial.
inline Int content(const LaurentPoly& p) {
    Int g = 0;
    for (const auto& [e, c] : p.terms()) g = boost::multiprecision::gcd(g, c);
    return g < 0 ? Int(-g) : g;
}

// Dense coefficient vector of p shifted so the lowest exponent sits at
// index 0; records the shift.
inline std::vector<Int> to_dense(const LaurentPoly& p, int& shift) {
    shift = p.terms().begin()->first;
    int deg = p.terms().rbegin()->first - shift;
    std::vector<Int> v(deg + 1, 0);
    for (const auto& [e, c] : p.terms()) v[e - shift] = c;
    return v;
}

inline void trim(std::vector<Int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

inline void make_primitive(std::vector<Int>& v) {
    Int g = 0;
    for (const auto& c : v) g = boost::multiprecision::gcd(g, c);
    if (g < 0) g = -g;
    if (g > 1)
        for (auto& c : v) c /= g;
    if (!v.empty() && v.back() < 0)
        for (auto& c : v) c = -c;
}

// Pseudo-remainder of a by b in Z[A] (b nonempty, trimmed).
inline std::vector<Int> pseudo_rem(std::vector<Int> a, const std::vector<Int>& b) {
    const Int& lb = b.back();
    while (a.size() >= b.size()) {
        trim(a);
        if (a.size() < b.size()) break;
        Int la = a.back();
        size_t off = a.size() - b.size();
        for (auto& c : a) c *= lb;
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= la * b[i];
        trim(a);
    }
    return a;
}

}  // namespace detail

// gcd in Z[A, A^-1], normalized: primitive, lowest exponent 0, positive
// leading coefficient.  gcd with 0 returns the other argument normalized.
inline LaurentPoly laurent_gcd(const LaurentPoly& p, const LaurentPoly& q) {
    auto normalize = [](const LaurentPoly& f) {
        int shift;
        auto v = detail::to_dense(f, shift);
        detail::make_primitive(v);
        LaurentPoly r;
        // drop trailing zeros at the low end so the lowest exponent is 0
        size_t low = 0;
        while (low < v.size() && v[low] == 0) ++low;
        for (size_t i = low; i < v.size(); ++i)
            if (v[i] != 0) r.add_term(static_cast<int>(i - low), v[i]);
        return r;
    };
    if (p.is_zero()) return q.is_zero() ? LaurentPoly::zero() : normalize(q);
    if (q.is_zero()) return normalize(p);
    int s;
    auto a = detail::to_dense(p, s);
    auto b = detail::to_dense(q, s);
    detail::make_primitive(a);
    detail::make_primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        auto r = detail::pseudo_rem(a, b);
        detail::make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    Int c = boost::multiprecision::gcd(detail::content(p), detail::content(q));
    LaurentPoly g;
    size_t low = 0;
    while (low < a.size() && a[low] == 0) ++low;
    for (size_t i = low; i < a.size(); ++i)
        if (a[i] != 0) g.add_term(static_cast<int>(i - low), a[i] * c);
    return g;
}

// Exact quotient of Laurent polynomials, kept reduced (gcd cancelled,
// denominator with positive leading coefficient and lowest exponent 0).
// The denominator collapses to 1 whenever the quotient is a polynomial.
class LaurentRational {
public:
    LaurentRational() : num_(), den_(LaurentPoly::one()) {}
    LaurentRational(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly::one()) {}
    LaurentRational(LaurentPoly num, LaurentPoly den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero())
            throw Error(ErrorCode::INEXACT_DIVISION, "zero denominator");
        reduce();
    }

    static LaurentRational zero() { return LaurentRational(); }
    static LaurentRational one() { return LaurentRational(LaurentPoly::one()); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == LaurentPoly::one(); }

    // The underlying polynomial; INEXACT_DIVISION if the quotient is not one.
    const LaurentPoly& as_poly() const {
        if (!is_polynomial())
            throw Error(ErrorCode::INEXACT_DIVISION, "rational value is not a polynomial");
        return num_;
    }

    LaurentRational operator+(const LaurentRational& o) const {
        if (is_polynomial() && o.is_polynomial()) return LaurentRational(num_ + o.num_);
        return LaurentRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    LaurentRational operator-() const {
        LaurentRational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    LaurentRational operator-(const LaurentRational& o) const { return *this + (-o); }
    LaurentRational operator*(const LaurentRational& o) const {
        if (is_polynomial() && o.is_polynomial()) return LaurentRational(num_ * o.num_);
        return LaurentRational(num_ * o.num_, den_ * o.den_);
    }
    LaurentRational operator/(const LaurentRational& o) const {
        if (o.is_zero()) throw Error(ErrorCode::INEXACT_DIVISION, "division by zero");
        return LaurentRational(num_ * o.den_, den_ * o.num_);
    }
    LaurentRational& operator+=(const LaurentRational& o) { return *this = *this + o; }
    LaurentRational& operator*=(const LaurentRational& o) { return *this = *this * o; }

    bool operator==(const LaurentRational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const LaurentRational& o) const { return !(*this == o); }
    bool operator<(const LaurentRational& o) const {
        if (num_ != o.num_) return num_ < o.num_;
        return den_ < o.den_;
    }

    // Rational-function degree: deg num - deg den (kNegInf for 0).
    int degree() const {
        if (num_.is_zero()) return kNegInf;
        return max_min_degree(num_).max_deg - max_min_degree(den_).max_deg;
    }
    int min_degree() const {
        if (num_.is_zero()) return kPosInf;
        return max_min_degree(num_).min_deg - max_min_degree(den_).min_deg;
    }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::one();
            return;
        }
        if (den_ == LaurentPoly::one()) return;
        LaurentPoly g = laurent_gcd(num_, den_);
        if (!(g == LaurentPoly::one())) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
        // absorb the remaining unit +-A^k of the denominator into the numerator
        int low = max_min_degree(den_).min_deg;
        Int lead = den_.terms().rbegin()->second;
        if (low != 0 || lead < 0) {
            LaurentPoly unit = LaurentPoly::monomial(low, lead < 0 ? -1 : 1);
            den_ = exact_divide(den_, unit);
            num_ = exact_divide(num_, unit);
        }
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

// Loop value of a single circle: delta = -A^2 - A^-2.
inline LaurentPoly loop_value() {
    LaurentPoly d;
    d.add_term(2, -1);
    d.add_term(-2, -1);
    return d;
}

// delta(n) = (-1)^n (A^{2(n+1)} - A^{-2(n+1)}) / (A^2 - A^-2).
// The quotient expands to the exact Laurent polynomial
// (-1)^n (A^{2n} + A^{2n-4} + ... + A^{-2n}).
inline LaurentPoly delta(int n) {
    if (n < 0) throw Error(ErrorCode::INCONSISTENT_INPUT, "delta requires n >= 0");
    LaurentPoly p;
    Int sign = (n % 2 == 0) ? 1 : -1;
    for (int e = -2 * n; e <= 2 * n; e += 4) p.add_term(e, sign);
    return p;
}

// delta_factorial(n) = delta(n) * delta(n-1) * ... * delta(1); by convention
// the values at n = 0 and n = -1 are both 1.
inline LaurentPoly delta_factorial(int n) {
    if (n < -1) throw Error(ErrorCode::INCONSISTENT_INPUT, "delta_factorial requires n >= -1");
    LaurentPoly p = LaurentPoly::one();
    for (int k = 1; k <= n; ++k) p *= delta(k);
    return p;
}

inline bool admissible_triple(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) return false;
    if ((a + b + c) % 2 != 0) return false;
    return a <= b + c && b <= a + c && c <= a + b;
}

inline void require_admissible(int a, int b, int c) {
    if (!admissible_triple(a, b, c)) {
        std::ostringstream msg;
        msg << "(" << a << ", " << b << ", " << c << ")";
        throw Error(ErrorCode::INADMISSIBLE_TRIPLE, msg.str());
    }
}

// Closed form for the theta-graph bracket, via exact delta-factorial
// arithmetic.  With x = (a+c-b)/2, y = (b+c-a)/2, z = (a+b-c)/2:
//   theta(a,b,c) = D!(x+y+z) D!(x-1) D!(y-1) D!(z-1)
//                  / (D!(y+z-1) D!(z+x-1) D!(x+y-1))
// where D!(k) = delta_factorial(k).  The quotient is a rational function of
// A in general (e.g. (2,2,2) has a pole at A^4 = -1); it reduces to a Laurent
// polynomial for triples like (n,n,0).
inline LaurentRational theta(int a, int b, int c) {
    require_admissible(a, b, c);
    const int x = (a + c - b) / 2;
    const int y = (b + c - a) / 2;
    const int z = (a + b - c) / 2;
    LaurentPoly num = delta_factorial(x + y + z) * delta_factorial(x - 1) *
                      delta_factorial(y - 1) * delta_factorial(z - 1);
    LaurentPoly den = delta_factorial(y + z - 1) * delta_factorial(z + x - 1) *
                      delta_factorial(x + y - 1);
    return LaurentRational(std::move(num), std::move(den));
}

// Degree of delta(c) / theta(a,b,c) without constructing the quotient.
inline int quotient_degree(int c, int a, int b) {
    require_admissible(a, b, c);
    return c - a - b;
}

}  // namespace skeinkit
