#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sft/base_x.hpp"
#include "sft/geometry.hpp"
#include "sft/rational.hpp"

namespace sft {

// Deterministic one-tape machine on a right-infinite tape. Stepping left at
// cell 0 halts ("moves off the tape"), as does entering a halting state.
struct TuringMachine {
    struct Rule {
        int write = 0;
        int move = 0;  // -1 left, +1 right
        int next = 0;
    };

    std::vector<std::string> states;
    std::vector<std::string> tape;
    int initial = 0;
    std::vector<uint8_t> halting;                       // per state
    std::vector<std::vector<std::optional<Rule>>> delta;  // [state][read]
    int sym0 = -1, sym1 = -1;

    int state_id(const std::string& s) const {
        for (size_t i = 0; i < states.size(); ++i)
            if (states[i] == s) return static_cast<int>(i);
        throw input_error("machine: unknown state " + s);
    }
    int tape_id(const std::string& s) const {
        for (size_t i = 0; i < tape.size(); ++i)
            if (tape[i] == s) return static_cast<int>(i);
        throw input_error("machine: unknown tape symbol " + s);
    }

    void validate() const {
        if (states.empty() || tape.empty()) throw input_error("machine: empty state or tape alphabet");
        if (sym0 < 0 || sym1 < 0) throw input_error("machine: tape alphabet must contain 0 and 1");
        for (size_t q = 0; q < states.size(); ++q) {
            if (halting[q]) continue;
            for (size_t a = 0; a < tape.size(); ++a)
                if (!delta[q][a]) throw input_error("machine: transition not total on non-halting state " + states[q]);
        }
    }
};

inline TuringMachine machine_from_json(const nlohmann::json& j) {
    TuringMachine m;
    m.states = j.at("states").get<std::vector<std::string>>();
    m.tape = j.at("tape").get<std::vector<std::string>>();
    m.halting.assign(m.states.size(), 0);
    for (const auto& h : j.at("halting")) m.halting[static_cast<size_t>(m.state_id(h.get<std::string>()))] = 1;
    m.initial = m.state_id(j.at("initial").get<std::string>());
    m.delta.assign(m.states.size(), std::vector<std::optional<TuringMachine::Rule>>(m.tape.size()));
    for (const auto& r : j.at("rules")) {
        if (!r.is_array() || r.size() != 5) throw input_error("machine rule must be [state,read,write,L|R,next]");
        int q = m.state_id(r[0].get<std::string>());
        int a = m.tape_id(r[1].get<std::string>());
        TuringMachine::Rule rule;
        rule.write = m.tape_id(r[2].get<std::string>());
        std::string mv = r[3].get<std::string>();
        if (mv == "L")
            rule.move = -1;
        else if (mv == "R")
            rule.move = +1;
        else
            throw input_error("machine rule: move must be L or R");
        rule.next = m.state_id(r[4].get<std::string>());
        if (m.delta[static_cast<size_t>(q)][static_cast<size_t>(a)]) throw input_error("machine: duplicate rule");
        m.delta[static_cast<size_t>(q)][static_cast<size_t>(a)] = rule;
    }
    for (size_t i = 0; i < m.tape.size(); ++i) {
        if (m.tape[i] == "0") m.sym0 = static_cast<int>(i);
        if (m.tape[i] == "1") m.sym1 = static_cast<int>(i);
    }
    m.validate();
    return m;
}

// A tape cell's data symbol plus optionally the head state.
struct CellConfig {
    int data = 0;
    int state = -1;

    bool has_state() const { return state >= 0; }
    bool operator==(const CellConfig& o) const { return data == o.data && state == o.state; }
    bool operator!=(const CellConfig& o) const { return !(*this == o); }
};

using InputAccessor = std::function<int(long)>;

inline InputAccessor bits_input(const TuringMachine& m, const std::vector<uint8_t>& bits) {
    return [&m, bits](long i) { return (i >= 0 && i < static_cast<long>(bits.size()) && bits[static_cast<size_t>(i)]) ? m.sym1 : m.sym0; };
}

struct RunResult {
    bool halted = false;  // a halting configuration (or off-tape move) occurred at time <= steps
    long halt_step = -1;
    std::vector<std::vector<CellConfig>> rows;  // configurations 0..T over cells 0..width-1 (when recorded)
};

// [OP] run_bounded: deterministic simulation through `steps` time units.
// "Halted at t" means the configuration at time t is halting (entering a
// halting state, or having stepped off the left edge). With record_width >
// 0, rows holds the configuration history over cells 0..record_width-1.
inline RunResult run_bounded(const TuringMachine& m, const InputAccessor& input, long steps,
                             long record_width = 0) {
    if (steps < 0) throw input_error("run_bounded: steps >= 0 required");
    RunResult res;
    std::map<long, int> written;
    auto read = [&](long i) {
        auto it = written.find(i);
        return it != written.end() ? it->second : input(i);
    };
    long pos = 0;
    int state = m.initial;
    bool off_tape = false;

    auto snapshot = [&]() {
        if (record_width <= 0) return;
        std::vector<CellConfig> row(static_cast<size_t>(record_width));
        for (long i = 0; i < record_width; ++i) {
            row[static_cast<size_t>(i)].data = read(i);
            row[static_cast<size_t>(i)].state = (!off_tape && pos == i) ? state : -1;
        }
        res.rows.push_back(std::move(row));
    };

    for (long t = 0; t <= steps; ++t) {
        snapshot();
        if (off_tape || m.halting[static_cast<size_t>(state)]) {
            res.halted = true;
            res.halt_step = t;
            return res;
        }
        if (t == steps) break;
        int sym = read(pos);
        const auto& rule = m.delta[static_cast<size_t>(state)][static_cast<size_t>(sym)];
        written[pos] = rule->write;
        state = rule->next;
        pos += rule->move;
        if (pos < 0) off_tape = true;
    }
    return res;
}

// [OP] local_transition: next configuration of the middle cell from the
// (left, middle, right) configurations; u is absent at cell 0, w is absent
// at a represented right edge. At most one argument may carry a state, and
// halting configurations have no successor.
inline CellConfig local_transition(const TuringMachine& m, const std::optional<CellConfig>& u,
                                   const CellConfig& v, const std::optional<CellConfig>& w) {
    int heads = (u && u->has_state() ? 1 : 0) + (v.has_state() ? 1 : 0) + (w && w->has_state() ? 1 : 0);
    if (heads > 1) throw input_error("local_transition: multiple machine states present");

    auto rule_of = [&](const CellConfig& c) -> const TuringMachine::Rule& {
        if (m.halting[static_cast<size_t>(c.state)])
            throw input_error("local_transition: halting configurations have no successor");
        return *m.delta[static_cast<size_t>(c.state)][static_cast<size_t>(c.data)];
    };

    if (v.has_state()) {
        const auto& r = rule_of(v);
        return CellConfig{r.write, -1};
    }
    if (u && u->has_state()) {
        const auto& r = rule_of(*u);
        return CellConfig{v.data, r.move > 0 ? r.next : -1};
    }
    if (w && w->has_state()) {
        const auto& r = rule_of(*w);
        return CellConfig{v.data, r.move < 0 ? r.next : -1};
    }
    return CellConfig{v.data, -1};
}

// ---------------------------------------------------------------------------
// Pruning (exact rational arithmetic)

struct RSeq {
    enum class Kind { Const, List } kind = Kind::Const;
    mpq_class constant;
    std::vector<mpq_class> values;

    static RSeq make_const(const mpq_class& c) { return RSeq{Kind::Const, c, {}}; }
    static RSeq make_list(std::vector<mpq_class> v) { return RSeq{Kind::List, 0, std::move(v)}; }

    // "const:p/q" or "list:a/b,c/d,..."
    static RSeq parse(const std::string& s) {
        auto colon = s.find(':');
        if (colon == std::string::npos) throw input_error("r-seq: expected const:P/Q or list:V1,V2,...");
        std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
        if (kind == "const") return make_const(parse_rational(rest));
        if (kind == "list") {
            std::vector<mpq_class> vals;
            std::istringstream ss(rest);
            std::string tok;
            while (std::getline(ss, tok, ',')) vals.push_back(parse_rational(tok));
            if (vals.empty()) throw input_error("r-seq: empty list");
            return make_list(std::move(vals));
        }
        throw input_error("r-seq: unknown kind " + kind);
    }

    static RSeq from_json(const nlohmann::json& j) {
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "const")
            return make_const(mpq_class(j.at("p").get<long>(), j.at("q").get<long>()));
        if (kind == "list") {
            std::vector<mpq_class> vals;
            for (const auto& v : j.at("values")) vals.push_back(parse_rational(v.get<std::string>()));
            return make_list(std::move(vals));
        }
        throw input_error("r-seq: unknown kind " + kind);
    }

    mpq_class at(int N) const {
        if (kind == Kind::Const) return constant;
        if (N < 1 || N > static_cast<int>(values.size())) throw input_error("r-seq: not defined at N");
        return values[static_cast<size_t>(N - 1)];
    }
};

struct PruneStep {
    int N = 0;
    mpq_class r;
    mpq_class delta;
};

struct PruneOutcome {
    bool halted = false;
    int halt_N = -1;  // iteration at which delta_N > r(N) + 2^-N held
    std::vector<PruneStep> trace;
};

// [OP] prune_run. delta_N is the relative frequency of 1-bits over the 2^N
// equidistributed column positions; column levels are read off the positions'
// residues (a position with residue r != 0 mod 2^K has 2-adic valuation
// v2(r), and residue 0 mod 2^K means its level exceeds K >= L, bit 0), so no
// doubly-exponential position values are ever materialized. The exact
// identity delta_N = sum_{n<=N} rho_n 2^-n + rho' 2^-N is verified each
// iteration.
inline PruneOutcome prune_run(const LevelColoring& rho, const RSeq& r_seq, int N_max) {
    if (N_max < 1) throw input_error("prune_run: N_max >= 1 required");
    if (N_max > 60) throw budget_error("prune_run: N_max too large");
    PruneOutcome out;
    int L = rho.length();

    for (int N = 1; N <= N_max; ++N) {
        int K = std::max(N, L);
        unsigned long long mod = 1ull << K;
        long q = least_order_5_mod_2n(N);

        unsigned long long step = 1;
        for (long i = 0; i < q; ++i) step = (step * 5) % mod;
        unsigned long long power = step, pos = 1;
        unsigned long long count = 1ull << N;

        long ones = 0;
        int leftover_bit = -1;
        for (unsigned long long t = 1; t <= count; ++t) {
            pos = (pos + power) % mod;
            power = (power * step) % mod;
            int bit;
            if (pos == 0) {
                bit = 0;  // level exceeds K >= L
            } else {
                int v2 = 0;
                unsigned long long x = pos;
                while ((x & 1) == 0) {
                    x >>= 1;
                    ++v2;
                }
                bit = rho.bit(v2 + 1);
            }
            if ((pos & ((1ull << N) - 1)) == 0) {
                if (leftover_bit != -1) throw std::logic_error("prune_run: residue system not complete");
                leftover_bit = bit;
            }
            if (bit) ++ones;
        }
        if (leftover_bit == -1) throw std::logic_error("prune_run: no leftover position");

        mpq_class delta(ones, static_cast<long>(count));
        delta.canonicalize();

        mpq_class expect = leftover_bit * pow2_q(-N);
        for (int n = 1; n <= std::min(N, L); ++n)
            if (rho.bit(n)) expect += pow2_q(-n);
        expect.canonicalize();
        if (delta != expect) throw std::logic_error("prune_run: delta identity violated");

        mpq_class rN = r_seq.at(N);
        out.trace.push_back(PruneStep{N, rN, delta});
        if (delta > rN + pow2_q(-N)) {
            out.halted = true;
            out.halt_N = N;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Board superposition (Prop-style representation of a run over an n-board)

enum class BoardCellKind : uint8_t { Node, HapPair, VertTriple };

struct BoardAnnot {
    BoardCellKind kind = BoardCellKind::Node;
    CellConfig node;          // Node
    CellConfig left, right;   // HapPair
    CellConfig u, v, w;       // VertTriple
    bool has_u = false, has_w = false;

    bool operator==(const BoardAnnot& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case BoardCellKind::Node: return node == o.node;
            case BoardCellKind::HapPair: return left == o.left && right == o.right;
            case BoardCellKind::VertTriple:
                return has_u == o.has_u && has_w == o.has_w && v == o.v &&
                       (!has_u || u == o.u) && (!has_w || w == o.w);
        }
        return false;
    }
};

struct BoardRun {
    int level = 0;
    long rows = 0;  // 4^level node rows = represented time steps
    std::vector<std::vector<CellConfig>> node_config;  // [t][j]
    std::map<Coord, BoardAnnot> annotations;           // every board cell
};

struct SuperimposeResult {
    bool feasible = false;
    long halt_step = -1;  // set when infeasible
    BoardRun run;         // valid when feasible
};

// [OP] board_superimpose. Feasible iff the machine reaches time 4^n - 1
// with every configuration up to there non-halting (halting states have no
// representation on the board).
inline SuperimposeResult board_superimpose(const TuringMachine& m, const BoardSpec& b,
                                           const std::vector<uint8_t>& input_bits) {
    long R = static_cast<long>(b.node_axis.size());
    if (static_cast<long>(input_bits.size()) != R)
        throw input_error("board_superimpose: need one input bit per node column");

    RunResult sim = run_bounded(m, bits_input(m, input_bits), R - 1, R);
    SuperimposeResult out;
    if (sim.halted && sim.halt_step <= R - 1) {
        out.feasible = false;
        out.halt_step = sim.halt_step;
        return out;
    }
    out.feasible = true;
    out.run.level = b.level;
    out.run.rows = R;
    out.run.node_config = sim.rows;

    const auto& axis = b.node_axis;
    std::vector<long> node_index(static_cast<size_t>(b.side) + 1, -1);
    for (size_t j = 0; j < axis.size(); ++j) node_index[static_cast<size_t>(axis[j])] = static_cast<long>(j);

    auto cfg = [&](long t, long j) { return sim.rows[static_cast<size_t>(t)][static_cast<size_t>(j)]; };

    for (long y = 1; y <= b.side; ++y) {
        for (long x = 1; x <= b.side; ++x) {
            if (!b.in_board(x, y)) continue;
            BoardAnnot an;
            if (b.is_node(x, y)) {
                an.kind = BoardCellKind::Node;
                an.node = cfg(node_index[static_cast<size_t>(y)], node_index[static_cast<size_t>(x)]);
            } else if (b.axis_hit(y)) {
                // horizontal transmission between the flanking nodes
                long t = node_index[static_cast<size_t>(y)];
                long xl = x;
                while (!b.axis_hit(xl)) --xl;
                long xr = x;
                while (!b.axis_hit(xr)) ++xr;
                an.kind = BoardCellKind::HapPair;
                an.left = cfg(t, node_index[static_cast<size_t>(xl)]);
                an.right = cfg(t, node_index[static_cast<size_t>(xr)]);
            } else {
                // vertical transmission above the node below
                long j = node_index[static_cast<size_t>(x)];
                long yb = y;
                while (!b.axis_hit(yb)) --yb;
                long t = node_index[static_cast<size_t>(yb)];
                an.kind = BoardCellKind::VertTriple;
                an.v = cfg(t, j);
                if (j > 0) {
                    an.has_u = true;
                    an.u = cfg(t, j - 1);
                }
                if (j + 1 < R) {
                    an.has_w = true;
                    an.w = cfg(t, j + 1);
                }
            }
            out.run.annotations[{static_cast<int>(x), static_cast<int>(y)}] = an;
        }
    }
    return out;
}

// [OP] verify_superimposed: purely local checks of a board annotation map.
inline bool verify_superimposed(const BoardRun& run, const TuringMachine& m, const BoardSpec& b) {
    long R = static_cast<long>(b.node_axis.size());
    const auto& axis = b.node_axis;
    std::vector<long> node_index(static_cast<size_t>(b.side) + 1, -1);
    for (size_t j = 0; j < axis.size(); ++j) node_index[static_cast<size_t>(axis[j])] = static_cast<long>(j);

    auto get = [&](long x, long y) -> const BoardAnnot* {
        auto it = run.annotations.find({static_cast<int>(x), static_cast<int>(y)});
        return it == run.annotations.end() ? nullptr : &it->second;
    };
    auto node_at = [&](long x, long y) -> std::optional<CellConfig> {
        const BoardAnnot* an = get(x, y);
        if (!an || an->kind != BoardCellKind::Node) return std::nullopt;
        return an->node;
    };
    auto cfg_ok = [&](const CellConfig& c) {
        if (c.data < 0 || c.data >= static_cast<int>(m.tape.size())) return false;
        return c.state < static_cast<int>(m.states.size());
    };

    for (long y = 1; y <= b.side; ++y) {
        for (long x = 1; x <= b.side; ++x) {
            if (!b.in_board(x, y)) continue;
            const BoardAnnot* an = get(x, y);
            if (!an) return false;

            if (b.is_node(x, y)) {
                if (an->kind != BoardCellKind::Node) return false;
                const CellConfig& c = an->node;
                if (c.data < 0 || c.data >= static_cast<int>(m.tape.size())) return false;
                if (c.has_state() && m.halting[static_cast<size_t>(c.state)]) return false;
                long t = node_index[static_cast<size_t>(y)], j = node_index[static_cast<size_t>(x)];
                if (t == 0) {
                    // bottom node row: initial state at the lower-left node only
                    if (j == 0 && c.state != m.initial) return false;
                    if (j != 0 && c.has_state()) return false;
                } else {
                    // transition check against the triple below (or the
                    // adjacent node row when there is no cell in between)
                    std::optional<CellConfig> u, v, w;
                    if (b.is_node(x, y - 1)) {
                        v = node_at(x, y - 1);
                        if (j > 0) u = node_at(axis[static_cast<size_t>(j - 1)], y - 1);
                        if (j + 1 < R) w = node_at(axis[static_cast<size_t>(j + 1)], y - 1);
                        if (!v || (j > 0 && !u) || (j + 1 < R && !w)) return false;
                    } else {
                        const BoardAnnot* below = get(x, y - 1);
                        if (!below || below->kind != BoardCellKind::VertTriple) return false;
                        v = below->v;
                        if (below->has_u) u = below->u;
                        if (below->has_w) w = below->w;
                        if (below->has_u != (j > 0) || below->has_w != (j + 1 < R)) return false;
                    }
                    CellConfig expect;
                    try {
                        expect = local_transition(m, u, *v, w);
                    } catch (const input_error&) {
                        return false;
                    }
                    if (!(c == expect)) return false;
                }
            } else if (b.axis_hit(y)) {
                if (an->kind != BoardCellKind::HapPair) return false;
                if (!cfg_ok(an->left) || !cfg_ok(an->right)) return false;
                // constancy along the run
                if (b.in_board(x + 1, y) && !b.is_node(x + 1, y)) {
                    const BoardAnnot* r = get(x + 1, y);
                    if (!r || r->kind != BoardCellKind::HapPair) return false;
                    if (!(an->left == r->left && an->right == r->right)) return false;
                }
                // pickup at both ends
                long xl = x;
                while (!b.axis_hit(xl)) --xl;
                long xr = x;
                while (!b.axis_hit(xr)) ++xr;
                auto l = node_at(xl, y), r = node_at(xr, y);
                if (!l || !r) return false;
                if (!(an->left == *l && an->right == *r)) return false;
            } else {
                if (an->kind != BoardCellKind::VertTriple) return false;
                if (!cfg_ok(an->v) || (an->has_u && !cfg_ok(an->u)) || (an->has_w && !cfg_ok(an->w)))
                    return false;
                long j = node_index[static_cast<size_t>(x)];
                if (an->has_u != (j > 0) || an->has_w != (j + 1 < R)) return false;
                if (b.in_board(x, y + 1) && !b.is_node(x, y + 1)) {
                    const BoardAnnot* up = get(x, y + 1);
                    if (!up || up->kind != BoardCellKind::VertTriple) return false;
                    if (!(*an == *up)) return false;
                }
                // pickup from the node below and its flanking nodes
                long yb = y;
                while (!b.axis_hit(yb)) --yb;
                auto v = node_at(x, yb);
                if (!v || !(an->v == *v)) return false;
                if (j > 0) {
                    auto u = node_at(axis[static_cast<size_t>(j - 1)], yb);
                    if (!u || !(an->u == *u)) return false;
                }
                if (j + 1 < R) {
                    auto w = node_at(axis[static_cast<size_t>(j + 1)], yb);
                    if (!w || !(an->w == *w)) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace sft
