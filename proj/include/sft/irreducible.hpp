#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sft/core.hpp"
#include "sft/counting.hpp"

namespace sft {

inline long sym_cube_cells(int d, int n) {
    long c = 1;
    for (int i = 0; i < d; ++i) c *= 2L * n + 1;
    return c;
}

inline int pattern_radius(const Pattern& a) {
    int r = 0;
    for (const auto& c : a.domain.offsets)
        for (int v : c) r = std::max(r, std::abs(v));
    return r;
}

inline int ceil_sqrt(int n) {
    int r = 0;
    while (r * r < n) ++r;
    return r;
}

enum class Admissibility { Inadmissible, Admissible, Undecided };

struct IrreducibleBudgets {
    int decide_n_max = 8;  // scale cap for the global-admissibility search
    int r_max = 5;         // cap for the r' search
    int squeeze_k_max = 6; // cap for the two-sided squeeze index
    Budgets search;
};

namespace detail {

// Does `fixed` extend to a locally admissible coloring of `region`?
inline bool extendable(const Pattern& fixed, const Syntax& s, const Shape& region, const Budgets& b) {
    RegionSearch search(s, region);
    search.fix(fixed);
    return search.find_any(b);
}

// Universality tables for windows straddling a boundary: indexed by the
// assignment of the inside cells; a table entry is 1 when every outside
// assignment that occurs in some allowed window keeps the window allowed.
class UniversalTables {
  public:
    explicit UniversalTables(const Syntax& s) : s_(&s) {}

    const std::vector<uint8_t>& table(const std::vector<size_t>& inside_positions) {
        auto it = cache_.find(inside_positions);
        if (it != cache_.end()) return it->second;

        int A = s_->alphabet->size();
        size_t nf = s_->shape.size();
        std::vector<uint8_t> is_inside(nf, 0);
        for (size_t p : inside_positions) is_inside[p] = 1;
        std::vector<size_t> outside_positions;
        for (size_t p = 0; p < nf; ++p)
            if (!is_inside[p]) outside_positions.push_back(p);

        uint64_t n_in = 1, n_out = 1, n_all = 1;
        for (size_t i = 0; i < inside_positions.size(); ++i) n_in *= static_cast<uint64_t>(A);
        for (size_t i = 0; i < outside_positions.size(); ++i) n_out *= static_cast<uint64_t>(A);
        for (size_t i = 0; i < nf; ++i) n_all *= static_cast<uint64_t>(A);

        // outside assignments seen in at least one allowed window
        std::vector<uint8_t> realizable(n_out, 0);
        std::vector<int> syms(nf);
        for (uint64_t code = 0; code < n_all; ++code) {
            if (!s_->code_allowed(code)) continue;
            uint64_t c = code, out_code = 0, mul = 1;
            for (size_t p = 0; p < nf; ++p) {
                int sym = static_cast<int>(c % static_cast<uint64_t>(A));
                c /= static_cast<uint64_t>(A);
                syms[p] = sym;
            }
            for (size_t p : outside_positions) {
                out_code += static_cast<uint64_t>(syms[p]) * mul;
                mul *= static_cast<uint64_t>(A);
            }
            realizable[out_code] = 1;
        }

        std::vector<uint8_t> tbl(n_in, 1);
        for (uint64_t in_code = 0; in_code < n_in; ++in_code) {
            uint64_t c = in_code;
            for (size_t p : inside_positions) {
                syms[p] = static_cast<int>(c % static_cast<uint64_t>(A));
                c /= static_cast<uint64_t>(A);
            }
            for (uint64_t out_code = 0; out_code < n_out && tbl[in_code]; ++out_code) {
                if (!realizable[out_code]) continue;
                uint64_t oc = out_code;
                for (size_t p : outside_positions) {
                    syms[p] = static_cast<int>(oc % static_cast<uint64_t>(A));
                    oc /= static_cast<uint64_t>(A);
                }
                uint64_t full = 0, mul = 1;
                for (size_t p = 0; p < nf; ++p) {
                    full += static_cast<uint64_t>(syms[p]) * mul;
                    mul *= static_cast<uint64_t>(A);
                }
                if (!s_->code_allowed(full)) tbl[in_code] = 0;
            }
        }
        return cache_.emplace(inside_positions, std::move(tbl)).first->second;
    }

  private:
    const Syntax* s_;
    std::map<std::vector<size_t>, std::vector<uint8_t>> cache_;
};

// Search for a coloring g of Q_M \ domain(a) such that a u g is locally
// admissible on Q_M and every window reaching outside Q_M (but inside Q_N)
// stays allowed for every outside assignment that occurs in an allowed
// window. Such a g certifies that a u (b restricted outside Q_M) extends to
// a locally admissible Q_N pattern for *every* locally admissible b on Q_N.
inline bool has_universal_collar(const Pattern& a, const Syntax& s, int M, int N, const Budgets& b) {
    Shape inner = sym_cube(s.dim, M);
    RegionSearch search(s, inner);
    search.fix(a);

    UniversalTables tables(s);
    CoordSet inner_cells(inner.offsets.begin(), inner.offsets.end());
    Shape outer = sym_cube(s.dim, N);
    const Coord f0 = s.shape.offsets.front();
    CoordSet seen;
    for (const auto& base : outer.offsets) {
        Coord u = base - f0;
        if (!seen.insert(u).second) continue;
        std::vector<size_t> inside_pos, inside_cells;
        bool in_outer = true, any_in = false, any_out = false;
        for (size_t p = 0; p < s.shape.size(); ++p) {
            Coord c = s.shape.offsets[p] + u;
            if (!outer.contains(c)) {
                in_outer = false;
                break;
            }
            if (inner_cells.count(c)) {
                any_in = true;
                inside_pos.push_back(p);
                inside_cells.push_back(inner.index_of(c));
            } else {
                any_out = true;
            }
        }
        if (!in_outer || !any_in || !any_out) continue;
        RegionSearch::WindowRule rule;
        rule.cells = inside_cells;
        rule.ok = tables.table(inside_pos);
        search.add_rule(std::move(rule));
    }
    return search.find_any(b);
}

inline std::string canonical_key(const Pattern& a) {
    Coord lo = a.domain.min_corner();
    std::string key;
    for (size_t i = 0; i < a.domain.size(); ++i) {
        for (int j = 0; j < a.domain.dim; ++j) {
            int v = a.domain.offsets[i][static_cast<size_t>(j)] - lo[static_cast<size_t>(j)];
            key += std::to_string(v);
            key += ',';
        }
        key += '=';
        key += std::to_string(a.symbols[i]);
        key += ';';
    }
    return key;
}

}  // namespace detail

// [OP] is_r_compatible: a u (b outside Q_{k+r}) extends to a locally
// admissible coloring of Q_probe (an extendability proxy for global
// admissibility; probe is the enclosing search scale).
inline bool is_r_compatible(const Pattern& a, const Pattern& b, int r, const Syntax& s, int probe,
                            const Budgets& budgets = {}) {
    if (!same_alphabet(a.alphabet, s.alphabet) || !same_alphabet(b.alphabet, s.alphabet))
        throw input_error("is_r_compatible: alphabet mismatch");
    int k = pattern_radius(a);
    int n = pattern_radius(b);
    if (n < k + r + 1) throw input_error("is_r_compatible: requires n >= k+r+1");
    if (probe < n) throw input_error("is_r_compatible: probe must be >= n");

    Shape region = sym_cube(s.dim, probe);
    RegionSearch search(s, region);
    search.fix(a);
    for (size_t i = 0; i < b.domain.size(); ++i) {
        int norm = 0;
        for (int v : b.domain.offsets[i]) norm = std::max(norm, std::abs(v));
        if (norm > k + r) search.fix(b.domain.offsets[i], b.symbols[i]);
    }
    return search.find_any(budgets);
}

// Memoizing decision procedure for global admissibility (terminates with a
// verdict for irreducible syntaxes; Undecided is the budget outcome).
class GlobalAdmissibility {
  public:
    GlobalAdmissibility(const Syntax& s, IrreducibleBudgets budgets = {})
        : s_(&s), budgets_(std::move(budgets)) {}

    // [OP] decide_globally_admissible
    Admissibility decide(const Pattern& a, int n_max) const {
        std::string key = detail::canonical_key(a);
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end() && (it->second.first != Admissibility::Undecided || it->second.second >= n_max))
                return it->second.first;
        }
        Admissibility v = decide_impl(a, n_max);
        std::lock_guard<std::mutex> lk(mu_);
        memo_[key] = {v, n_max};
        return v;
    }

    Admissibility decide(const Pattern& a) const { return decide(a, budgets_.decide_n_max); }

    const Syntax& syntax() const { return *s_; }
    const IrreducibleBudgets& budgets() const { return budgets_; }

  private:
    Admissibility decide_impl(const Pattern& a, int n_max) const {
        if (!is_locally_admissible(a, *s_)) return Admissibility::Inadmissible;
        int k = pattern_radius(a);
        for (int N = k + 2; N <= n_max; ++N) {
            if (!detail::extendable(a, *s_, sym_cube(s_->dim, N), budgets_.search))
                return Admissibility::Inadmissible;
            int r = ceil_sqrt(N);
            if (N >= k + r + 1 && detail::has_universal_collar(a, *s_, k + r, N, budgets_.search))
                return Admissibility::Admissible;
        }
        return Admissibility::Undecided;
    }

    const Syntax* s_;
    IrreducibleBudgets budgets_;
    mutable std::mutex mu_;
    mutable std::map<std::string, std::pair<Admissibility, int>> memo_;
};

struct LowerTerm {
    int n = 0;
    int r_prime = 0;
    mpz_class k_n;      // number of globally admissible Q_n-patterns
    mpq_class value;    // (1/|Q_{n+r'}|) log2 k(n), rounded down
};

// [OP] lower_entropy_term. The r' search accepts the smallest r' whose
// compatibility condition it can certify (via a universal collar per
// pattern); the certificate implies every globally admissible
// Q_{n+r'+1}-pattern is r'-compatible with each globally admissible
// Q_n-pattern, which is what the bound needs.
inline LowerTerm lower_entropy_term(const GlobalAdmissibility& oracle, int n) {
    const Syntax& s = oracle.syntax();
    const IrreducibleBudgets& ib = oracle.budgets();

    std::vector<Pattern> all = enumerate_locally_admissible(s, sym_cube(s.dim, n), ib.search);
    std::vector<Pattern> good;
    for (const auto& p : all) {
        Admissibility v = oracle.decide(p);
        if (v == Admissibility::Undecided) throw budget_error("lower_entropy_term: admissibility undecided");
        if (v == Admissibility::Admissible) good.push_back(p);
    }
    if (good.empty()) throw input_error("lower_entropy_term: no globally admissible patterns (empty system)");

    for (int r = 0; r <= ib.r_max; ++r) {
        bool ok = true;
        for (const auto& p : good) {
            if (!detail::has_universal_collar(p, s, n + r, n + r + 1, ib.search)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            LowerTerm t;
            t.n = n;
            t.r_prime = r;
            t.k_n = mpz_class(static_cast<unsigned long>(good.size()));
            t.value = log2_interval(t.k_n).lo / sym_cube_cells(s.dim, n + r);
            t.value.canonicalize();
            return t;
        }
    }
    throw budget_error("lower_entropy_term: r' search budget exhausted");
}

struct SqueezeResult {
    int precision = 0;   // requested n; success means width < 1/n
    int witness_k = 0;   // squeeze index reached
    int r_prime = 0;     // r' of the best lower term
    mpq_class lower;     // max certified lower term
    mpq_class upper;     // min certified upper term
    mpq_class width;
    bool success = false;
};

// [OP] entropy_to_precision: interleave certified upper terms on symmetric
// cubes with lower terms until the bracket is narrower than 1/n.
inline SqueezeResult entropy_to_precision(const GlobalAdmissibility& oracle, int n) {
    const Syntax& s = oracle.syntax();
    const IrreducibleBudgets& ib = oracle.budgets();
    SqueezeResult res;
    res.precision = n;
    bool have_lower = false, have_upper = false;

    for (int k = 1; k <= ib.squeeze_k_max; ++k) {
        res.witness_k = k;
        try {
            mpz_class c = count_box(s, std::vector<int>(static_cast<size_t>(s.dim), 2 * k + 1), ib.search);
            if (c == 0) throw input_error("entropy_to_precision: empty system");
            mpq_class u = log2_interval(c).hi / sym_cube_cells(s.dim, k);
            u.canonicalize();
            if (!have_upper || u < res.upper) res.upper = u;
            have_upper = true;
        } catch (const budget_error&) {
            break;
        }
        try {
            LowerTerm t = lower_entropy_term(oracle, k);
            if (!have_lower || t.value > res.lower) {
                res.lower = t.value;
                res.r_prime = t.r_prime;
            }
            have_lower = true;
        } catch (const budget_error&) {
            break;
        }
        res.width = res.upper - res.lower;
        if (res.width < mpq_class(1, n)) {
            res.success = true;
            return res;
        }
    }
    if (!have_lower || !have_upper) throw budget_error("entropy_to_precision: no bracket within budget");
    res.width = res.upper - res.lower;
    res.success = res.width < mpq_class(1, n);
    return res;
}

}  // namespace sft
