#pragma once

/*
 * field.hpp
 * ---------
 * Exact scalars over Q (arbitrary-precision rationals) or a prime field F_p
 * with p an odd prime.  Characteristic 2 is rejected at construction.
 *
 * Rationals are kept reduced with a positive denominator, so equality is a
 * structural check.  Prime-field elements are residues in [0, p).
 */

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "axial/errors.hpp"

namespace axial {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

enum class FieldKind { rationals, prime };

class FieldSpec {
public:
    static FieldSpec Q() { return FieldSpec(FieldKind::rationals, 0); }

    static FieldSpec Fp(long p) {
        if (p == 2) throw CharTwo();
        if (p < 3 || !is_prime(p)) throw Error("F_p requires an odd prime p >= 3, got " + std::to_string(p));
        return FieldSpec(FieldKind::prime, p);
    }

    FieldKind kind() const { return kind_; }
    long p() const { return p_; }
    bool is_rationals() const { return kind_ == FieldKind::rationals; }

    bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string str() const { return is_rationals() ? "Q" : "F" + std::to_string(p_); }

private:
    FieldSpec(FieldKind k, long p) : kind_(k), p_(p) {}
    FieldKind kind_;
    long p_;
};

class Scalar {
public:
    Scalar() : field_(FieldSpec::Q()), v_(Rat(0)) {}

    Scalar(FieldSpec f, const Rat& q) : field_(f), v_(Rat(0)) {
        if (f.is_rationals()) {
            Rat c = q;
            c.canonicalize();
            v_ = c;
        } else {
            v_ = reduce_rat_mod(q, f.p());
        }
    }

    Scalar(FieldSpec f, long n) : Scalar(f, Rat(n)) {}

    static Scalar zero(FieldSpec f) { return Scalar(f, 0); }
    static Scalar one(FieldSpec f) { return Scalar(f, 1); }

    const FieldSpec& field() const { return field_; }

    bool is_zero() const {
        if (field_.is_rationals()) return rat_val() == 0;
        return res() == 0;
    }

    bool operator==(const Scalar& o) const {
        if (field_ != o.field_) return false;
        if (field_.is_rationals()) return rat_val() == o.rat_val();
        return res() == o.res();
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar operator+(const Scalar& o) const {
        check(o);
        if (field_.is_rationals()) return from_rat(field_, rat_val() + o.rat_val());
        return from_res(field_, (res() + o.res()) % field_.p());
    }

    Scalar operator-(const Scalar& o) const {
        check(o);
        if (field_.is_rationals()) return from_rat(field_, rat_val() - o.rat_val());
        long p = field_.p();
        return from_res(field_, (res() + p - o.res()) % p);
    }

    Scalar operator-() const {
        if (field_.is_rationals()) return from_rat(field_, -rat_val());
        long p = field_.p();
        return from_res(field_, (p - res()) % p);
    }

    Scalar operator*(const Scalar& o) const {
        check(o);
        if (field_.is_rationals()) return from_rat(field_, rat_val() * o.rat_val());
        return from_res(field_, mulmod(res(), o.res(), field_.p()));
    }

    Scalar inv() const {
        if (is_zero()) throw Error("division by zero");
        if (field_.is_rationals()) return from_rat(field_, 1 / rat_val());
        return from_res(field_, invmod(res(), field_.p()));
    }

    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // The rational this residue came from is not recoverable; for Q returns
    // the exact value.
    std::string str() const {
        if (field_.is_rationals()) return rat_val().get_str();
        return std::to_string(res());
    }

    const Rat& as_rational() const {
        if (!field_.is_rationals()) throw Error("scalar is not rational");
        return rat_val();
    }

    long residue() const {
        if (field_.is_rationals()) throw Error("scalar is not a prime-field element");
        return res();
    }

private:
    static long reduce_rat_mod(const Rat& q, long p) {
        Rat c = q;
        c.canonicalize();
        mpz_class num = c.get_num(), den = c.get_den();
        mpz_class pz(p);
        mpz_class dmod = den % pz;
        if (dmod == 0) throw CoefficientNotReducible(c.get_str());
        long n = mpz_class(((num % pz) + pz) % pz).get_si();
        long d = mpz_class((dmod + pz) % pz).get_si();
        return mulmod(n, invmod(d, p), p);
    }

    static long mulmod(long a, long b, long p) {
        return static_cast<long>((static_cast<__int128>(a) * b) % p);
    }

    static long invmod(long a, long p) {
        // extended Euclid; a in (0, p)
        long t = 0, newt = 1, r = p, newr = a % p;
        while (newr != 0) {
            long q = r / newr;
            long tmp = t - q * newt;
            t = newt;
            newt = tmp;
            tmp = r - q * newr;
            r = newr;
            newr = tmp;
        }
        if (r != 1) throw Error("not invertible mod p");
        return ((t % p) + p) % p;
    }

    static Scalar from_rat(FieldSpec f, Rat q) {
        Scalar s;
        s.field_ = f;
        q.canonicalize();
        s.v_ = std::move(q);
        return s;
    }

    static Scalar from_res(FieldSpec f, long r) {
        Scalar s;
        s.field_ = f;
        s.v_ = r;
        return s;
    }

    void check(const Scalar& o) const {
        if (field_ != o.field_) throw FieldMismatch();
    }

    const Rat& rat_val() const { return std::get<Rat>(v_); }
    long res() const { return std::get<long>(v_); }

    FieldSpec field_;
    std::variant<Rat, long> v_;
};

}  // namespace axial
