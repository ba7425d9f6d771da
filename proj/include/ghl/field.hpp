#pragma once

// Exact scalar arithmetic: prime fields F_p (p < 2^31, machine-word
// residues) and the rationals (GMP-backed). Everything downstream is
// templated on one of these two field types; no floating point anywhere.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ghl {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// input that cannot be interpreted in the requested field / shape
struct malformed_input : error {
    using error::error;
};
// input outside the supported fragment (e.g. odd polynomial generators)
struct unsupported_input : error {
    using error::error;
};
struct field_mismatch : error {
    using error::error;
};
// a question that the configured truncation degree cannot decide
struct truncation_error : error {
    using error::error;
};

inline bool is_prime_u32(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Field of residues mod p. Elements are stored reduced in [0, p).
class PrimeField {
  public:
    using Elem = uint32_t;

    explicit PrimeField(uint32_t p) : p_(p) {
        if (!is_prime_u32(p) || p >= (1u << 31))
            throw malformed_input("prime field needs a prime p < 2^31, got " + std::to_string(p));
    }

    uint32_t modulus() const { return p_; }
    unsigned characteristic() const { return p_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p_; }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem add(Elem a, Elem b) const {
        uint64_t s = uint64_t(a) + b;
        return s >= p_ ? Elem(s - p_) : Elem(s);
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : Elem(a + p_ - b); }
    Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const { return Elem((uint64_t(a) * b) % p_); }

    Elem inv(Elem a) const {
        if (a == 0) throw malformed_input("division by zero in F_p");
        // extended Euclid on (a, p)
        int64_t t = 0, new_t = 1, r = p_, new_r = a;
        while (new_r != 0) {
            int64_t q = r / new_r;
            int64_t tmp = t - q * new_t;
            t = new_t; new_t = tmp;
            tmp = r - q * new_r;
            r = new_r; new_r = tmp;
        }
        if (t < 0) t += p_;
        return Elem(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(long long v) const {
        long long m = v % (long long)p_;
        if (m < 0) m += p_;
        return Elem(m);
    }

    std::string to_string(Elem a) const { return std::to_string(a); }

    // Accepts "a" or "a/b"; rejects b divisible by p.
    Elem parse(const std::string& s) const {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return from_int(std::stoll(s));
            long long num = std::stoll(s.substr(0, slash));
            long long den = std::stoll(s.substr(slash + 1));
            if (den % (long long)p_ == 0)
                throw malformed_input("scalar " + s + " has denominator divisible by " + std::to_string(p_));
            return div(from_int(num), from_int(den));
        } catch (const std::invalid_argument&) {
            throw malformed_input("bad scalar literal: " + s);
        } catch (const std::out_of_range&) {
            throw malformed_input("scalar literal out of range: " + s);
        }
    }

  private:
    uint32_t p_;
};

// The rationals, exact arbitrary-precision arithmetic.
class Rationals {
  public:
    using Elem = mpq_class;

    unsigned characteristic() const { return 0; }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (sgn(a) == 0) throw malformed_input("division by zero in Q");
        return Elem(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const {
        if (sgn(b) == 0) throw malformed_input("division by zero in Q");
        return a / b;
    }

    Elem from_int(long long v) const { return Elem((long)v); }

    std::string to_string(const Elem& a) const {
        Elem c = a;
        c.canonicalize();
        return c.get_str();
    }

    Elem parse(const std::string& s) const {
        try {
            Elem v(s);
            v.canonicalize();
            return v;
        } catch (const std::invalid_argument&) {
            throw malformed_input("bad rational literal: " + s);
        }
    }
};

// Runtime description of a coefficient field: p == 0 means Q.
struct FieldSpec {
    uint32_t p = 0;

    bool rational() const { return p == 0; }
    unsigned characteristic() const { return p; }
    std::string name() const { return p == 0 ? std::string("Q") : "F" + std::to_string(p); }

    static FieldSpec parse(const std::string& s) {
        if (s == "0" || s == "Q" || s == "q") return FieldSpec{0};
        unsigned long v;
        try {
            v = std::stoul(s);
        } catch (...) {
            throw malformed_input("bad characteristic: " + s);
        }
        if (!is_prime_u32(v) || v >= (1ul << 31))
            throw malformed_input("characteristic must be 0 or a prime < 2^31, got " + s);
        return FieldSpec{uint32_t(v)};
    }
};

template <class Fn>
auto with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.rational()) return fn(Rationals{});
    return fn(PrimeField{spec.p});
}

}  // namespace ghl
