#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "sft/core.hpp"
#include "sft/rational.hpp"

namespace sft {

struct Budgets {
    uint64_t max_enum = 1ull << 24;    // candidate space cap |alphabet|^|region|
    uint64_t max_states = 1ull << 24;  // DP row-state cap
    uint64_t max_nodes = 200'000'000;  // backtracking node cap
    long max_power_iters = 200'000;    // spectral iteration cap
};

struct CountResult {
    std::vector<int> region;  // rectangle dimensions (n_1, ..., n_d)
    mpz_class count;
    LogValue log2_per_site;  // -inf marker iff count == 0
};

struct EntropyBoundSeq {
    std::vector<std::pair<int, LogValue>> terms;  // (n, u_n), strictly increasing n
    bool complete = true;                         // false when a budget stopped the sequence
};

inline LogValue per_site(const LogValue& v, long sites) {
    if (!v.finite) return v;
    return LogValue{true, {v.iv.lo / sites, v.iv.hi / sites}};
}

// ---------------------------------------------------------------------------
// Backtracking search for locally admissible colorings of an arbitrary
// finite region, with optional fixed cells, per-cell symbol domains, and
// extra table-driven window rules (used by the irreducible module).

class RegionSearch {
  public:
    struct WindowRule {
        std::vector<size_t> cells;  // shape-order indices into the region
        std::vector<uint8_t> ok;    // indexed by base-A code over `cells`
    };

    RegionSearch(const Syntax& s, Shape region) : syntax_(&s), region_(std::move(region)) {
        size_t n = region_.size();
        int A = s.alphabet->size();
        domains_.assign(n, std::vector<uint8_t>(static_cast<size_t>(A), 1));
        // Row-major order: later axes vary slowest.
        order_.resize(n);
        for (size_t i = 0; i < n; ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(), [&](size_t a, size_t b) {
            const Coord& ca = region_.offsets[a];
            const Coord& cb = region_.offsets[b];
            for (int i = region_.dim - 1; i >= 0; --i)
                if (ca[static_cast<size_t>(i)] != cb[static_cast<size_t>(i)])
                    return ca[static_cast<size_t>(i)] < cb[static_cast<size_t>(i)];
            return false;
        });
        pos_of_.resize(n);
        for (size_t k = 0; k < n; ++k) pos_of_[order_[k]] = k;

        // Syntax shape translates fully inside the region.
        const Coord f0 = s.shape.offsets.front();
        for (const auto& base : region_.offsets) {
            Coord u = base - f0;
            std::vector<size_t> idxs;
            bool fits = true;
            for (const auto& f : s.shape.offsets) {
                Coord c = f + u;
                if (!region_.contains(c)) {
                    fits = false;
                    break;
                }
                idxs.push_back(region_.index_of(c));
            }
            if (fits) shape_checks_.push_back(std::move(idxs));
        }
    }

    const Shape& region() const { return region_; }

    void fix(const Coord& c, int sym) {
        size_t i = region_.index_of(c);
        std::fill(domains_[i].begin(), domains_[i].end(), 0);
        domains_[i][static_cast<size_t>(sym)] = 1;
    }

    void fix(const Pattern& p) {
        for (size_t i = 0; i < p.domain.size(); ++i) fix(p.domain.offsets[i], p.symbols[i]);
    }

    void restrict_domain(const Coord& c, const std::vector<uint8_t>& allowed_syms) {
        size_t i = region_.index_of(c);
        for (size_t a = 0; a < domains_[i].size(); ++a) domains_[i][a] &= allowed_syms[a];
    }

    void add_rule(WindowRule r) { extra_rules_.push_back(std::move(r)); }

    // Search entry points. `on_solution` gets symbols indexed in shape order
    // of the region; return false from it to stop the search.
    bool find_any(const Budgets& b) const {
        bool found = false;
        run(b, 1, [&](const std::vector<int>&) {
            found = true;
            return false;
        });
        return found;
    }

    mpz_class count_all(const Budgets& b) const {
        mpz_class n = 0;
        run(b, 0, [&](const std::vector<int>&) {
            ++n;
            return true;
        });
        return n;
    }

    void enumerate(const Budgets& b, const std::function<bool(const std::vector<int>&)>& on_solution) const {
        run(b, 0, on_solution);
    }

  private:
    struct Check {
        const std::vector<size_t>* cells;
        const std::vector<uint8_t>* table;  // null -> syntax allowed table
    };

    void run(const Budgets& b, uint64_t result_cap,
             const std::function<bool(const std::vector<int>&)>& on_solution) const {
        size_t n = region_.size();
        int A = syntax_->alphabet->size();

        // Bucket checks by the search position of their last-assigned cell.
        std::vector<std::vector<Check>> buckets(n);
        for (const auto& sc : shape_checks_) {
            size_t last = 0;
            for (size_t idx : sc) last = std::max(last, pos_of_[idx]);
            buckets[last].push_back(Check{&sc, nullptr});
        }
        for (const auto& r : extra_rules_) {
            size_t last = 0;
            for (size_t idx : r.cells) last = std::max(last, pos_of_[idx]);
            buckets[last].push_back(Check{&r.cells, &r.ok});
        }

        std::vector<int> assign(n, -1);
        std::vector<int> choice(n, -1);
        uint64_t nodes = 0, results = 0;

        auto passes = [&](size_t k) {
            for (const auto& chk : buckets[k]) {
                uint64_t code = 0, mul = 1;
                for (size_t idx : *chk.cells) {
                    code += static_cast<uint64_t>(assign[idx]) * mul;
                    mul *= static_cast<uint64_t>(A);
                }
                bool ok = chk.table ? (*chk.table)[code] != 0 : syntax_->code_allowed(code);
                if (!ok) return false;
            }
            return true;
        };

        size_t k = 0;
        while (true) {
            if (k == n) {
                ++results;
                if (!on_solution(assign)) return;
                if (result_cap && results >= result_cap) return;
                if (n == 0) return;
                --k;
                assign[order_[k]] = -1;
                continue;
            }
            size_t cell = order_[k];
            int next = choice[k] + 1;
            bool advanced = false;
            for (; next < A; ++next) {
                if (!domains_[cell][static_cast<size_t>(next)]) continue;
                if (++nodes > b.max_nodes) throw budget_error("region search: node budget exceeded");
                assign[cell] = next;
                choice[k] = next;
                if (passes(k)) {
                    advanced = true;
                    break;
                }
            }
            if (advanced) {
                ++k;
                if (k < n) choice[k] = -1;
            } else {
                assign[cell] = -1;
                choice[k] = -1;
                if (k == 0) return;
                --k;
                assign[order_[k]] = -1;
            }
        }
    }

    const Syntax* syntax_;
    Shape region_;
    std::vector<std::vector<uint8_t>> domains_;
    std::vector<size_t> order_;    // search position -> shape index
    std::vector<size_t> pos_of_;   // shape index -> search position
    std::vector<std::vector<size_t>> shape_checks_;
    std::vector<WindowRule> extra_rules_;
};

// [OP] enumerate_locally_admissible
inline std::vector<Pattern> enumerate_locally_admissible(const Syntax& s, const Shape& region,
                                                         const Budgets& b = {}) {
    if (region.dim != s.dim) throw input_error("enumerate: dimension mismatch");
    double space = std::pow(static_cast<double>(s.alphabet->size()), static_cast<double>(region.size()));
    if (space > static_cast<double>(b.max_enum)) throw budget_error("enumerate: explosion limit exceeded");
    RegionSearch search(s, region);
    std::vector<Pattern> out;
    search.enumerate(b, [&](const std::vector<int>& syms) {
        out.emplace_back(s.alphabet, region, syms);
        return true;
    });
    return out;
}

namespace detail {

// Exact locally-admissible count over a box for a one-step syntax, by
// row-state dynamic programming along the last axis (d == 2) or a symbol
// chain (d == 1). Exact big-integer arithmetic throughout.
inline mpz_class count_box_one_step(const Syntax& s, const std::vector<int>& ext, const Budgets& b) {
    int A = s.alphabet->size();
    if (ext.size() == 1) {
        int n = ext[0];
        // transfer along allowed pairs
        std::vector<uint8_t> pair_ok(static_cast<size_t>(A) * static_cast<size_t>(A));
        for (int l = 0; l < A; ++l)
            for (int r = 0; r < A; ++r)
                pair_ok[static_cast<size_t>(l * A + r)] =
                    s.code_allowed(static_cast<uint64_t>(l) + static_cast<uint64_t>(r) * static_cast<uint64_t>(A));
        std::vector<mpz_class> cur(static_cast<size_t>(A), 1);
        for (int step = 1; step < n; ++step) {
            std::vector<mpz_class> nxt(static_cast<size_t>(A), 0);
            for (int l = 0; l < A; ++l) {
                if (cur[static_cast<size_t>(l)] == 0) continue;
                for (int r = 0; r < A; ++r)
                    if (pair_ok[static_cast<size_t>(l * A + r)]) nxt[static_cast<size_t>(r)] += cur[static_cast<size_t>(l)];
            }
            cur.swap(nxt);
        }
        mpz_class total = 0;
        for (const auto& v : cur) total += v;
        return total;
    }

    // d == 2: states are full rows along the shorter axis.
    int n = ext[0], m = ext[1];
    if (n > m) std::swap(n, m);  // transpose the box; transpose the windows below
    bool transposed = ext[0] > ext[1];

    double est = std::pow(static_cast<double>(A), static_cast<double>(n));
    if (est > static_cast<double>(b.max_states)) throw budget_error("count_rect: row-state limit exceeded");
    uint64_t n_states = 1;
    for (int i = 0; i < n; ++i) n_states *= static_cast<uint64_t>(A);

    // window(bl, br, tl, tr) allowed, in box coordinates
    Shape cube = unit_cube(2);
    size_t i00 = cube.index_of({0, 0}), i10 = cube.index_of({1, 0});
    size_t i01 = cube.index_of({0, 1}), i11 = cube.index_of({1, 1});
    std::vector<uint8_t> win(static_cast<size_t>(A) * A * A * A, 0);
    std::vector<int> syms(4);
    for (int bl = 0; bl < A; ++bl)
        for (int br = 0; br < A; ++br)
            for (int tl = 0; tl < A; ++tl)
                for (int tr = 0; tr < A; ++tr) {
                    syms[i00] = bl;
                    syms[i10] = transposed ? tl : br;
                    syms[i01] = transposed ? br : tl;
                    syms[i11] = tr;
                    win[static_cast<size_t>(((bl * A + br) * A + tl) * A + tr)] =
                        s.code_allowed(s.code_of(syms)) ? 1 : 0;
                }

    std::vector<uint64_t> powers(static_cast<size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i) powers[static_cast<size_t>(i)] = powers[static_cast<size_t>(i - 1)] * static_cast<uint64_t>(A);
    auto digit = [&](uint64_t state, int i) {
        return static_cast<int>(state / powers[static_cast<size_t>(i)] % static_cast<uint64_t>(A));
    };

    std::vector<mpz_class> cur(n_states, 1);
    std::vector<mpz_class> nxt(n_states);
    for (int row = 1; row < m; ++row) {
        for (auto& v : nxt) v = 0;
        for (uint64_t r = 0; r < n_states; ++r) {
            if (cur[r] == 0) continue;
            for (uint64_t q = 0; q < n_states; ++q) {
                bool ok = true;
                for (int i = 0; i + 1 < n; ++i) {
                    int bl = digit(r, i), br = digit(r, i + 1);
                    int tl = digit(q, i), tr = digit(q, i + 1);
                    if (!win[static_cast<size_t>(((bl * A + br) * A + tl) * A + tr)]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) nxt[q] += cur[r];
            }
        }
        cur.swap(nxt);
    }
    mpz_class total = 0;
    for (const auto& v : cur) total += v;
    return total;
}

}  // namespace detail

// Exact count of locally admissible colorings of the axis-aligned box with
// the given extents. Non-one-step syntaxes are recoded first; the box is the
// original system's region and the recoded box is shrunk per the recode
// bijection. Dimensions >= 3 fall back to backtracking enumeration.
inline mpz_class count_box(const Syntax& s, const std::vector<int>& ext, const Budgets& b = {}) {
    if (static_cast<int>(ext.size()) != s.dim) throw input_error("count_box: extent dimension mismatch");
    for (int e : ext)
        if (e < 1) throw input_error("count_box: extents must be >= 1");

    if (s.dim <= 2) {
        if (s.one_step) return detail::count_box_one_step(s, ext, b);
        RecodeResult rec = recode_one_step(s);
        std::vector<int> w = rec.window.extents();
        std::vector<int> ext2(ext.size());
        bool shrinkable = true;
        for (size_t i = 0; i < ext.size(); ++i) {
            ext2[i] = ext[i] - w[i] + 1;
            if (ext2[i] < 1) shrinkable = false;
        }
        if (shrinkable) return detail::count_box_one_step(rec.syntax, ext2, b);
    }
    // Small/general fallback: direct backtracking count on the original.
    std::vector<int> lo(ext.size(), 1);
    RegionSearch search(s, box_shape(lo, ext));
    return search.count_all(b);
}

// [OP] count_rect (d == 2)
inline CountResult count_rect(const Syntax& s, int n, int m, const Budgets& b = {}) {
    if (s.dim != 2) throw input_error("count_rect: requires d = 2");
    mpz_class c = count_box(s, {n, m}, b);
    return CountResult{{n, m}, c, per_site(log2_value(c), static_cast<long>(n) * m)};
}

// [OP] upper_entropy_terms: u_n = (1/n^d) log2 N~(F_n), each >= h(X).
inline EntropyBoundSeq upper_entropy_terms(const Syntax& s, int n_max, const Budgets& b = {}) {
    EntropyBoundSeq seq;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<int> ext(static_cast<size_t>(s.dim), n);
        long sites = 1;
        for (int i = 0; i < s.dim; ++i) sites *= n;
        try {
            mpz_class c = count_box(s, ext, b);
            seq.terms.emplace_back(n, per_site(log2_value(c), sites));
        } catch (const budget_error&) {
            seq.complete = false;
            break;
        }
    }
    return seq;
}

// [OP] sofic_image_count: number of distinct one-block images of locally
// admissible F_n-patterns.
inline CountResult sofic_image_count(const Syntax& s, const BlockMap& m, int n, const Budgets& b = {}) {
    if (!same_alphabet(m.source, s.alphabet)) throw input_error("sofic_image_count: alphabet mismatch");
    Shape region = cube_region(s.dim, n);
    double space = std::pow(static_cast<double>(s.alphabet->size()), static_cast<double>(region.size()));
    if (space > static_cast<double>(b.max_enum)) throw budget_error("sofic_image_count: explosion limit exceeded");
    RegionSearch search(s, region);
    std::set<std::vector<int>> images;
    search.enumerate(b, [&](const std::vector<int>& syms) {
        std::vector<int> img(syms.size());
        for (size_t i = 0; i < syms.size(); ++i) img[i] = m.map[static_cast<size_t>(syms[i])];
        images.insert(std::move(img));
        return true;
    });
    mpz_class c(static_cast<unsigned long>(images.size()));
    long sites = static_cast<long>(region.size());
    return CountResult{std::vector<int>(static_cast<size_t>(s.dim), n), c, per_site(log2_value(c), sites)};
}

// ---------------------------------------------------------------------------
// Certified spectral-radius bracket for a 0/1 transfer graph.

namespace detail {

inline std::vector<int> scc_of(const std::vector<std::vector<int>>& adj, const std::vector<uint8_t>& alive,
                               int& n_comp) {
    int n = static_cast<int>(adj.size());
    std::vector<int> comp(static_cast<size_t>(n), -1), low(static_cast<size_t>(n)), num(static_cast<size_t>(n), -1);
    std::vector<int> stk;
    std::vector<uint8_t> on_stk(static_cast<size_t>(n), 0);
    int counter = 0;
    n_comp = 0;

    struct Frame {
        int v;
        size_t edge;
    };
    for (int s0 = 0; s0 < n; ++s0) {
        if (!alive[static_cast<size_t>(s0)] || num[static_cast<size_t>(s0)] != -1) continue;
        std::vector<Frame> frames{{s0, 0}};
        num[static_cast<size_t>(s0)] = low[static_cast<size_t>(s0)] = counter++;
        stk.push_back(s0);
        on_stk[static_cast<size_t>(s0)] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[static_cast<size_t>(f.v)].size()) {
                int w = adj[static_cast<size_t>(f.v)][f.edge++];
                if (!alive[static_cast<size_t>(w)]) continue;
                if (num[static_cast<size_t>(w)] == -1) {
                    num[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    stk.push_back(w);
                    on_stk[static_cast<size_t>(w)] = 1;
                    frames.push_back({w, 0});
                } else if (on_stk[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(f.v)] = std::min(low[static_cast<size_t>(f.v)], num[static_cast<size_t>(w)]);
                }
            } else {
                if (low[static_cast<size_t>(f.v)] == num[static_cast<size_t>(f.v)]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        on_stk[static_cast<size_t>(w)] = 0;
                        comp[static_cast<size_t>(w)] = n_comp;
                        if (w == f.v) break;
                    }
                    ++n_comp;
                }
                int v = f.v;
                frames.pop_back();
                if (!frames.empty())
                    low[static_cast<size_t>(frames.back().v)] =
                        std::min(low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
            }
        }
    }
    return comp;
}

}  // namespace detail

// Bracket for log2 of the spectral radius of the graph's recurrent part.
// Vertices with zero in- or out-degree are deleted to a fixpoint; the radius
// of each remaining strongly connected component is bracketed by the min/max
// coordinate growth ratios of an exact integer power iteration (on A + I, so
// the iteration is primitive per component), and the maximum over components
// is returned. Returns the -inf marker when nothing recurrent remains.
inline LogValue spectral_log2_radius(const std::vector<std::vector<int>>& adj, const mpq_class& tol,
                                     const Budgets& b = {}) {
    int n = static_cast<int>(adj.size());
    std::vector<uint8_t> alive(static_cast<size_t>(n), 1);

    // trim to the recurrent part
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> in_deg(static_cast<size_t>(n), 0), out_deg(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<size_t>(v)]) continue;
            for (int w : adj[static_cast<size_t>(v)]) {
                if (!alive[static_cast<size_t>(w)]) continue;
                ++out_deg[static_cast<size_t>(v)];
                ++in_deg[static_cast<size_t>(w)];
            }
        }
        for (int v = 0; v < n; ++v) {
            if (alive[static_cast<size_t>(v)] && (in_deg[static_cast<size_t>(v)] == 0 || out_deg[static_cast<size_t>(v)] == 0)) {
                alive[static_cast<size_t>(v)] = 0;
                changed = true;
            }
        }
    }
    if (std::none_of(alive.begin(), alive.end(), [](uint8_t a) { return a != 0; })) return LogValue::neg_inf();

    int n_comp = 0;
    std::vector<int> comp = detail::scc_of(adj, alive, n_comp);
    std::vector<std::vector<int>> members(static_cast<size_t>(n_comp));
    for (int v = 0; v < n; ++v)
        if (alive[static_cast<size_t>(v)]) members[static_cast<size_t>(comp[static_cast<size_t>(v)])].push_back(v);

    mpq_class slack = pow2_q(-44);
    mpq_class tol_eff = tol - 2 * slack;
    if (tol_eff <= 0) throw input_error("spectral: tolerance too small");

    mpq_class best_lo = 0, best_hi = 0;
    bool have = false;
    for (const auto& verts : members) {
        bool nontrivial = verts.size() > 1;
        if (!nontrivial) {
            int v = verts[0];
            for (int w : adj[static_cast<size_t>(v)])
                if (w == v) nontrivial = true;
        }
        if (!nontrivial) continue;

        std::vector<int> local(static_cast<size_t>(n), -1);
        for (size_t i = 0; i < verts.size(); ++i) local[static_cast<size_t>(verts[i])] = static_cast<int>(i);
        std::vector<std::vector<int>> ladj(verts.size());
        for (size_t i = 0; i < verts.size(); ++i)
            for (int w : adj[static_cast<size_t>(verts[i])])
                if (local[static_cast<size_t>(w)] >= 0) ladj[i].push_back(local[static_cast<size_t>(w)]);

        std::vector<mpz_class> x(verts.size(), 1), y(verts.size());
        mpq_class lo, hi;
        long iters = 0;
        while (true) {
            if (++iters > b.max_power_iters) throw budget_error("spectral: iteration budget exceeded");
            for (size_t i = 0; i < verts.size(); ++i) {
                y[i] = x[i];  // the +I term
                for (int j : ladj[i]) y[i] += x[static_cast<size_t>(j)];
            }
            lo = mpq_class(y[0], x[0]);
            hi = lo;
            for (size_t i = 1; i < verts.size(); ++i) {
                mpq_class r(y[i], x[i]);
                r.canonicalize();
                if (r < lo) lo = r;
                if (r > hi) hi = r;
            }
            lo.canonicalize();
            hi.canonicalize();
            lo -= 1;
            hi -= 1;
            x.swap(y);
            if (lo > 0) {
                RatInterval span{log2_interval(lo).lo, log2_interval(hi).hi};
                if (span.width() <= tol_eff) break;
            }
        }
        if (!have || lo > best_lo) best_lo = lo;
        if (!have || hi > best_hi) best_hi = hi;
        have = true;
    }
    if (!have) return LogValue::neg_inf();
    return LogValue{true, {log2_interval(best_lo).lo, log2_interval(best_hi).hi}};
}

// [OP] spectral_entropy_1d: h(X) for a 1D SFT as a certified interval of
// width <= tol around log2 of the transfer-graph spectral radius.
inline LogValue spectral_entropy_1d(const Syntax& s, const mpq_class& tol, const Budgets& b = {}) {
    if (s.dim != 1) throw input_error("spectral_entropy_1d: requires d = 1");
    Syntax os = s.one_step ? s : recode_one_step(s).syntax;
    int A = os.alphabet->size();
    std::vector<std::vector<int>> adj(static_cast<size_t>(A));
    for (int l = 0; l < A; ++l)
        for (int r = 0; r < A; ++r)
            if (os.code_allowed(static_cast<uint64_t>(l) + static_cast<uint64_t>(r) * static_cast<uint64_t>(A)))
                adj[static_cast<size_t>(l)].push_back(r);
    return spectral_log2_radius(adj, tol, b);
}

}  // namespace sft
