#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sft {

// Thrown when a configured resource limit stops a computation. Callers that
// can emit partial results catch this; the CLI maps it to exit code 2.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed interval [lo, hi] of exact rationals enclosing a real value.
struct RatInterval {
    mpq_class lo;
    mpq_class hi;

    mpq_class width() const { return hi - lo; }
    bool contains(const mpq_class& q) const { return lo <= q && q <= hi; }
};

// log2 of a positive quantity, or the -inf marker for log2(0).
struct LogValue {
    bool finite = true;
    RatInterval iv;

    static LogValue neg_inf() { return LogValue{false, {}}; }
};

namespace detail {

class MpfrGuard {
  public:
    explicit MpfrGuard(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    ~MpfrGuard() { mpfr_clear(x_); }
    MpfrGuard(const MpfrGuard&) = delete;
    MpfrGuard& operator=(const MpfrGuard&) = delete;
    mpfr_ptr get() { return x_; }

  private:
    mpfr_t x_;
};

inline mpq_class mpfr_to_mpq(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return mpq_class(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= mpq_class(p);
    } else {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= mpq_class(p);
    }
    q.canonicalize();
    return q;
}

inline mpq_class log2_directed(const mpz_class& z, mpfr_rnd_t rnd, mpfr_prec_t prec) {
    MpfrGuard x(prec);
    mpfr_set_z(x.get(), z.get_mpz_t(), rnd);
    mpfr_log2(x.get(), x.get(), rnd);
    return mpfr_to_mpq(x.get());
}

}  // namespace detail

// Certified enclosure of log2(z) for z >= 1. Exact (degenerate interval) for
// powers of two; width well below 2^-40 otherwise.
inline RatInterval log2_interval(const mpz_class& z, mpfr_prec_t prec = 96) {
    if (z <= 0) throw std::domain_error("log2_interval: nonpositive argument");
    if (mpz_scan1(z.get_mpz_t(), 0) == mpz_sizeinbase(z.get_mpz_t(), 2) - 1) {
        mpq_class e(static_cast<unsigned long>(mpz_sizeinbase(z.get_mpz_t(), 2) - 1));
        return {e, e};
    }
    return {detail::log2_directed(z, MPFR_RNDD, prec), detail::log2_directed(z, MPFR_RNDU, prec)};
}

inline LogValue log2_value(const mpz_class& count) {
    if (count == 0) return LogValue::neg_inf();
    return LogValue{true, log2_interval(count)};
}

// Enclosure of log2(q) for a positive rational q.
inline RatInterval log2_interval(const mpq_class& q, mpfr_prec_t prec = 96) {
    if (q <= 0) throw std::domain_error("log2_interval: nonpositive argument");
    RatInterval num = log2_interval(mpz_class(q.get_num()), prec);
    RatInterval den = log2_interval(mpz_class(q.get_den()), prec);
    return {num.lo - den.hi, num.hi - den.lo};
}

inline mpz_class pow_mpz(unsigned long base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline mpq_class pow2_q(long e) {
    if (e >= 0) return mpq_class(pow_mpz(2, static_cast<unsigned long>(e)));
    return mpq_class(1) / mpq_class(pow_mpz(2, static_cast<unsigned long>(-e)));
}

// Parses "p/q" or "p" into an exact rational.
inline mpq_class parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational");
    try {
        mpq_class q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw input_error("zero denominator: " + s);
        return q;
    } catch (const std::invalid_argument&) {
        throw input_error("bad rational: " + s);
    }
}

inline std::string rational_str(const mpq_class& q) {
    return q.get_str();
}

// Fixed-point decimal rendering, round half away from zero. digits <= 30.
inline std::string decimal_str(const mpq_class& q, int digits = 12) {
    mpz_class scale = pow_mpz(10, static_cast<unsigned long>(digits));
    mpq_class scaled = q * mpq_class(scale);
    mpz_class num = scaled.get_num(), den = scaled.get_den();
    mpz_class twice = 2 * (num % den);
    mpz_class r = num / den;  // truncated
    if (num >= 0) {
        if (twice >= den) r += 1;
    } else {
        if (-twice >= den) r -= 1;
    }
    bool neg = r < 0;
    mpz_class a = abs(r);
    mpz_class ip = a / scale, fp = a % scale;
    std::string frac = fp.get_str();
    frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
    return (neg ? "-" : "") + ip.get_str() + "." + frac;
}

inline std::string interval_str(const RatInterval& iv) {
    return "[" + rational_str(iv.lo) + ", " + rational_str(iv.hi) + "]";
}

inline uint64_t fnv1a64(const void* data, size_t n, uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

}  // namespace sft
