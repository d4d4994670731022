#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "sft/rational.hpp"

namespace sft {

using Coord = std::vector<int>;

inline Coord operator+(const Coord& a, const Coord& b) {
    Coord r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Coord operator-(const Coord& a, const Coord& b) {
    Coord r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

struct CoordHash {
    size_t operator()(const Coord& c) const {
        return static_cast<size_t>(fnv1a64(c.data(), c.size() * sizeof(int)));
    }
};

using CoordSet = std::unordered_set<Coord, CoordHash>;

// Ordered list of distinct symbol names; the order fixes all canonical
// enumerations (pattern codes, file output, DP state packing).
class Alphabet {
  public:
    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw input_error("alphabet: empty");
        for (size_t i = 0; i < names_.size(); ++i) {
            if (!index_.emplace(names_[i], static_cast<int>(i)).second)
                throw input_error("alphabet: duplicate symbol " + names_[i]);
        }
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int id) const { return names_.at(static_cast<size_t>(id)); }
    const std::vector<std::string>& names() const { return names_; }

    int id(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw input_error("alphabet: unknown symbol " + name);
        return it->second;
    }

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(std::vector<std::string> names) {
    return std::make_shared<const Alphabet>(std::move(names));
}

// Finite set of lattice offsets, sorted and deduplicated.
struct Shape {
    int dim = 0;
    std::vector<Coord> offsets;

    Shape() = default;
    Shape(int d, std::vector<Coord> offs) : dim(d), offsets(std::move(offs)) {
        if (dim < 1) throw input_error("shape: dimension must be >= 1");
        if (offsets.empty()) throw input_error("shape: empty");
        for (const auto& o : offsets)
            if (static_cast<int>(o.size()) != dim) throw input_error("shape: offset dimension mismatch");
        std::sort(offsets.begin(), offsets.end());
        offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    }

    size_t size() const { return offsets.size(); }

    bool contains(const Coord& c) const {
        return std::binary_search(offsets.begin(), offsets.end(), c);
    }

    size_t index_of(const Coord& c) const {
        auto it = std::lower_bound(offsets.begin(), offsets.end(), c);
        if (it == offsets.end() || *it != c) throw input_error("shape: offset not present");
        return static_cast<size_t>(it - offsets.begin());
    }

    Coord min_corner() const {
        Coord m = offsets.front();
        for (const auto& o : offsets)
            for (int i = 0; i < dim; ++i) m[i] = std::min(m[i], o[i]);
        return m;
    }

    Coord max_corner() const {
        Coord m = offsets.front();
        for (const auto& o : offsets)
            for (int i = 0; i < dim; ++i) m[i] = std::max(m[i], o[i]);
        return m;
    }

    std::vector<int> extents() const {
        Coord lo = min_corner(), hi = max_corner();
        std::vector<int> e(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) e[static_cast<size_t>(i)] = hi[i] - lo[i] + 1;
        return e;
    }

    int diameter() const {
        Coord lo = min_corner(), hi = max_corner();
        int d = 0;
        for (int i = 0; i < dim; ++i) d = std::max(d, hi[i] - lo[i]);
        return d;
    }

    Shape translated(const Coord& u) const {
        Shape s = *this;
        for (auto& o : s.offsets) o = o + u;
        return s;
    }

    bool operator==(const Shape& o) const { return dim == o.dim && offsets == o.offsets; }
};

// Axis-aligned box [lo_i, hi_i] per axis, inclusive.
inline Shape box_shape(const std::vector<int>& lo, const std::vector<int>& hi) {
    int d = static_cast<int>(lo.size());
    std::vector<Coord> offs;
    Coord cur(lo.begin(), lo.end());
    while (true) {
        offs.push_back(cur);
        int i = 0;
        for (; i < d; ++i) {
            if (cur[i] < hi[i]) {
                ++cur[i];
                break;
            }
            cur[i] = lo[i];
        }
        if (i == d) break;
    }
    return Shape(d, std::move(offs));
}

// F_n = {1..n}^d
inline Shape cube_region(int d, int n) {
    return box_shape(std::vector<int>(static_cast<size_t>(d), 1), std::vector<int>(static_cast<size_t>(d), n));
}

// Q_n = {-n..n}^d
inline Shape sym_cube(int d, int n) {
    return box_shape(std::vector<int>(static_cast<size_t>(d), -n), std::vector<int>(static_cast<size_t>(d), n));
}

inline Shape unit_cube(int d) {
    return box_shape(std::vector<int>(static_cast<size_t>(d), 0), std::vector<int>(static_cast<size_t>(d), 1));
}

inline Shape rect_region(int n, int m) {
    return box_shape({1, 1}, {n, m});
}

// Total coloring of a finite domain by symbols of one alphabet.
struct Pattern {
    AlphabetPtr alphabet;
    Shape domain;
    std::vector<int> symbols;  // aligned with domain.offsets

    Pattern() = default;
    Pattern(AlphabetPtr a, Shape dom, std::vector<int> syms)
        : alphabet(std::move(a)), domain(std::move(dom)), symbols(std::move(syms)) {
        if (symbols.size() != domain.size()) throw input_error("pattern: coloring not total");
        for (int s : symbols)
            if (s < 0 || s >= alphabet->size()) throw input_error("pattern: symbol out of range");
    }

    int at(const Coord& c) const { return symbols[domain.index_of(c)]; }

    Pattern translated(const Coord& u) const { return Pattern(alphabet, domain.translated(u), symbols); }

    Pattern restricted(const Shape& sub) const {
        std::vector<int> syms;
        syms.reserve(sub.size());
        for (const auto& o : sub.offsets) syms.push_back(at(o));
        return Pattern(alphabet, sub, syms);
    }

    bool operator==(const Pattern& o) const {
        return domain == o.domain && symbols == o.symbols && *alphabet == *o.alphabet;
    }
};

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
    return a == b || *a == *b;
}

// a and b are congruent when b is a translate of a with the same symbols.
inline bool congruent(const Pattern& a, const Pattern& b) {
    if (a.domain.size() != b.domain.size() || a.domain.dim != b.domain.dim) return false;
    if (!same_alphabet(a.alphabet, b.alphabet)) return false;
    Coord u = b.domain.offsets.front() - a.domain.offsets.front();
    for (size_t i = 0; i < a.domain.size(); ++i)
        if (a.domain.offsets[i] + u != b.domain.offsets[i]) return false;
    return a.symbols == b.symbols;
}

// a appears at u in b: b restricted to domain(a)+u is congruent to a.
inline bool appears_at(const Pattern& a, const Pattern& b, const Coord& u) {
    if (!same_alphabet(a.alphabet, b.alphabet)) return false;
    for (size_t i = 0; i < a.domain.size(); ++i) {
        Coord c = a.domain.offsets[i] + u;
        if (!b.domain.contains(c)) return false;
        if (b.at(c) != a.symbols[i]) return false;
    }
    return true;
}

enum class Mode { Allowed, Forbidden };

// Finite shape plus allowed (or forbidden) shape-patterns. Construction
// normalizes to an allowed-code table over the shape; all admissibility
// checks and counting go through that table.
struct Syntax {
    AlphabetPtr alphabet;
    int dim = 0;
    Shape shape;
    Mode mode = Mode::Allowed;
    std::vector<Pattern> patterns;

    std::vector<uint8_t> allowed;  // indexed by shape-coloring code
    bool one_step = false;

    uint64_t code_of(const std::vector<int>& syms) const {
        uint64_t code = 0;
        uint64_t mul = 1;
        for (int s : syms) {
            code += static_cast<uint64_t>(s) * mul;
            mul *= static_cast<uint64_t>(alphabet->size());
        }
        return code;
    }

    bool code_allowed(uint64_t code) const { return allowed[code] != 0; }
};

inline Syntax make_syntax(AlphabetPtr alphabet, int dim, Shape shape, Mode mode,
                          std::vector<Pattern> patterns) {
    Syntax s;
    s.alphabet = std::move(alphabet);
    s.dim = dim;
    if (shape.dim != dim) throw input_error("syntax: shape dimension mismatch");
    s.shape = std::move(shape);
    s.mode = mode;
    s.patterns = std::move(patterns);

    int A = s.alphabet->size();
    double est = std::pow(static_cast<double>(A), static_cast<double>(s.shape.size()));
    if (est > static_cast<double>(1ull << 26))
        throw budget_error("syntax: allowed-table size exceeds limit");
    uint64_t n_codes = 1;
    for (size_t i = 0; i < s.shape.size(); ++i) n_codes *= static_cast<uint64_t>(A);

    s.allowed.assign(n_codes, mode == Mode::Forbidden ? 1 : 0);
    for (const auto& p : s.patterns) {
        if (!same_alphabet(p.alphabet, s.alphabet)) throw input_error("syntax: pattern alphabet mismatch");
        if (!(p.domain == s.shape)) throw input_error("syntax: pattern domain differs from shape");
        uint64_t code = s.code_of(p.symbols);
        s.allowed[code] = (mode == Mode::Forbidden) ? 0 : 1;
    }

    s.one_step = (s.shape == unit_cube(dim).translated(s.shape.min_corner()));
    return s;
}

// Full shift: no constraints (forbidden mode, empty pattern set).
inline Syntax full_shift(AlphabetPtr alphabet, int dim) {
    return make_syntax(std::move(alphabet), dim, unit_cube(dim), Mode::Forbidden, {});
}

// [OP] is_locally_admissible
inline bool is_locally_admissible(const Pattern& p, const Syntax& s) {
    if (!same_alphabet(p.alphabet, s.alphabet)) throw input_error("is_locally_admissible: alphabet mismatch");
    if (p.domain.dim != s.dim) throw input_error("is_locally_admissible: dimension mismatch");

    CoordSet dom(p.domain.offsets.begin(), p.domain.offsets.end());
    const Coord& f0 = s.shape.offsets.front();
    std::vector<int> window(s.shape.size());
    for (const auto& cell : p.domain.offsets) {
        Coord u = cell - f0;
        bool fits = true;
        for (size_t i = 0; i < s.shape.size(); ++i) {
            Coord c = s.shape.offsets[i] + u;
            if (!dom.count(c)) {
                fits = false;
                break;
            }
            window[i] = p.at(c);
        }
        if (fits && !s.code_allowed(s.code_of(window))) return false;
    }
    return true;
}

// [OP] apply_block_map support type: one-block factor map between alphabets.
struct BlockMap {
    AlphabetPtr source;
    AlphabetPtr target;
    std::vector<int> map;  // source id -> target id

    BlockMap(AlphabetPtr src, AlphabetPtr tgt, std::vector<int> m)
        : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
        if (static_cast<int>(map.size()) != source->size())
            throw input_error("block map: not total on source alphabet");
        for (int t : map)
            if (t < 0 || t >= target->size()) throw input_error("block map: target symbol out of range");
    }
};

inline Pattern apply_block_map(const Pattern& p, const BlockMap& m) {
    if (!same_alphabet(p.alphabet, m.source)) throw input_error("apply_block_map: alphabet mismatch");
    std::vector<int> syms;
    syms.reserve(p.symbols.size());
    for (int s : p.symbols) syms.push_back(m.map[static_cast<size_t>(s)]);
    return Pattern(m.target, p.domain, std::move(syms));
}

struct RecodeResult {
    Syntax syntax;  // one-step, over the window alphabet
    Shape window;   // box shape W; count bijection region is {1..n}^d + W
};

// [OP] recode_one_step
//
// Symbols of the output are the legal colorings of a per-axis window of
// extent max(D_i - 1, 1) (D_i = bounding-box extent of the shape). A
// unit-cube pattern of window symbols is allowed when the overlaps agree
// and the amalgamated coloring violates no shape translate it contains.
// Locally admissible F_n-patterns of the output correspond bijectively to
// locally admissible input patterns on {1..n}^d + window (n >= 2).
inline RecodeResult recode_one_step(const Syntax& s) {
    int d = s.dim;
    int A = s.alphabet->size();
    Coord lo = s.shape.min_corner();
    std::vector<int> D = s.shape.extents();
    std::vector<int> w(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) w[static_cast<size_t>(i)] = std::max(D[static_cast<size_t>(i)] - 1, 1);

    Shape window = box_shape(std::vector<int>(static_cast<size_t>(d), 0),
                             [&] {
                                 std::vector<int> hi(static_cast<size_t>(d));
                                 for (int i = 0; i < d; ++i) hi[static_cast<size_t>(i)] = w[static_cast<size_t>(i)] - 1;
                                 return hi;
                             }());

    uint64_t n_window_cells = window.size();
    double est = std::pow(static_cast<double>(A), static_cast<double>(n_window_cells));
    if (est > static_cast<double>(1ull << 24)) throw budget_error("recode_one_step: window alphabet too large");

    // Shape translates fully inside the window (relative to window origin).
    auto translates_inside = [&](const Shape& region) {
        std::vector<std::vector<size_t>> result;  // cell indices in region order, shape order
        CoordSet cells(region.offsets.begin(), region.offsets.end());
        for (const auto& base : region.offsets) {
            Coord u = base - lo;
            std::vector<size_t> idxs;
            bool fits = true;
            for (const auto& f : s.shape.offsets) {
                Coord c = f + u;
                if (!cells.count(c)) {
                    fits = false;
                    break;
                }
                idxs.push_back(region.index_of(c));
            }
            if (fits) result.push_back(std::move(idxs));
        }
        return result;
    };

    // Enumerate legal window colorings.
    auto win_translates = translates_inside(window);
    std::vector<std::vector<int>> window_symbols;
    {
        std::vector<int> ext;
        for (int i = 0; i < d; ++i) ext.push_back(w[static_cast<size_t>(i)]);
        std::vector<int> cur(n_window_cells, 0);
        std::vector<int> buf(s.shape.size());
        while (true) {
            bool ok = true;
            for (const auto& tr : win_translates) {
                for (size_t i = 0; i < tr.size(); ++i) buf[i] = cur[tr[i]];
                if (!s.code_allowed(s.code_of(buf))) {
                    ok = false;
                    break;
                }
            }
            if (ok) window_symbols.push_back(cur);
            size_t i = 0;
            for (; i < n_window_cells; ++i) {
                if (cur[i] + 1 < A) {
                    ++cur[i];
                    break;
                }
                cur[i] = 0;
            }
            if (i == n_window_cells) break;
        }
    }
    if (window_symbols.empty()) throw input_error("recode_one_step: no legal window colorings (empty system)");

    std::vector<std::string> names;
    names.reserve(window_symbols.size());
    for (const auto& ws : window_symbols) {
        std::string nm;
        for (size_t i = 0; i < ws.size(); ++i) {
            if (i) nm += ",";
            nm += s.alphabet->name(ws[i]);
        }
        names.push_back(std::move(nm));
    }
    AlphabetPtr big = make_alphabet(std::move(names));
    size_t A2 = window_symbols.size();

    // Amalgam box of the unit cube of windows: extent w_i + 1 per axis.
    std::vector<int> amalgam_hi(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) amalgam_hi[static_cast<size_t>(i)] = w[static_cast<size_t>(i)];
    Shape amalgam = box_shape(std::vector<int>(static_cast<size_t>(d), 0), amalgam_hi);
    auto am_translates = translates_inside(amalgam);

    Shape cube = unit_cube(d);
    size_t n_cube = cube.size();
    double cube_est = std::pow(static_cast<double>(A2), static_cast<double>(n_cube));
    if (cube_est > static_cast<double>(1ull << 26)) throw budget_error("recode_one_step: cube pattern space too large");

    // For each cube position, the amalgam cells its window covers.
    std::vector<std::vector<std::pair<size_t, size_t>>> cover(n_cube);  // (amalgam idx, window idx)
    for (size_t ci = 0; ci < n_cube; ++ci) {
        for (size_t wi = 0; wi < window.size(); ++wi) {
            Coord c = cube.offsets[ci] + window.offsets[wi];
            cover[ci].emplace_back(amalgam.index_of(c), wi);
        }
    }

    std::vector<Pattern> cube_patterns;
    {
        std::vector<int> assign(n_cube, 0);
        std::vector<int> am(amalgam.size());
        std::vector<int> buf(s.shape.size());
        while (true) {
            std::fill(am.begin(), am.end(), -1);
            bool ok = true;
            for (size_t ci = 0; ci < n_cube && ok; ++ci) {
                const auto& ws = window_symbols[static_cast<size_t>(assign[ci])];
                for (const auto& [ai, wi] : cover[ci]) {
                    if (am[ai] == -1)
                        am[ai] = ws[wi];
                    else if (am[ai] != ws[wi]) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) {
                for (const auto& tr : am_translates) {
                    for (size_t i = 0; i < tr.size(); ++i) buf[i] = am[tr[i]];
                    if (!s.code_allowed(s.code_of(buf))) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) cube_patterns.emplace_back(big, cube, assign);
            size_t i = 0;
            for (; i < n_cube; ++i) {
                if (assign[i] + 1 < static_cast<int>(A2)) {
                    ++assign[i];
                    break;
                }
                assign[i] = 0;
            }
            if (i == n_cube) break;
        }
    }

    return RecodeResult{make_syntax(big, d, cube, Mode::Allowed, std::move(cube_patterns)), window};
}

// [OP] product. Both factors are recoded to one-step form first; the result
// is a one-step syntax over the pair alphabet whose locally admissible
// counts factor exactly as the product of the recoded factors' counts (for
// one-step inputs these equal the originals').
inline Syntax product(const Syntax& s1, const Syntax& s2) {
    if (s1.dim != s2.dim) throw input_error("product: dimension mismatch");
    Syntax a = recode_one_step(s1).syntax;
    Syntax b = recode_one_step(s2).syntax;
    int A1 = a.alphabet->size(), A2 = b.alphabet->size();

    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(A1) * static_cast<size_t>(A2));
    for (int j = 0; j < A2; ++j)
        for (int i = 0; i < A1; ++i) names.push_back(a.alphabet->name(i) + "|" + b.alphabet->name(j));
    AlphabetPtr pair_alpha = make_alphabet(std::move(names));

    Shape cube = unit_cube(s1.dim);
    std::vector<Pattern> pats;
    for (const auto& pa : a.patterns) {
        for (const auto& pb : b.patterns) {
            std::vector<int> syms(cube.size());
            for (size_t i = 0; i < cube.size(); ++i) syms[i] = pa.symbols[i] + A1 * pb.symbols[i];
            pats.emplace_back(pair_alpha, cube, std::move(syms));
        }
    }
    return make_syntax(pair_alpha, s1.dim, cube, Mode::Allowed, std::move(pats));
}

// [OP] lift_dimension: each hyperplane layer along the new last axis is an
// independent admissible configuration of the input. Count identity:
// locally admissible colorings of the (d+1)-cube of side n number N~(F_n)^n.
inline Syntax lift_dimension(const Syntax& s) {
    auto extend = [](const Shape& sh) {
        std::vector<Coord> offs;
        offs.reserve(sh.size());
        for (auto o : sh.offsets) {
            o.push_back(0);
            offs.push_back(std::move(o));
        }
        return Shape(sh.dim + 1, std::move(offs));
    };
    Shape shape2 = extend(s.shape);
    std::vector<Pattern> pats;
    pats.reserve(s.patterns.size());
    for (const auto& p : s.patterns) pats.emplace_back(p.alphabet, shape2, p.symbols);
    return make_syntax(s.alphabet, s.dim + 1, shape2, s.mode, std::move(pats));
}

// ---------------------------------------------------------------------------
// File formats (documented in docs/formats.md)

inline Pattern pattern_from_json(const nlohmann::json& j, const AlphabetPtr& alpha, int dim) {
    std::vector<Coord> offs;
    std::vector<std::pair<Coord, int>> cells;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2) throw input_error("pattern entry must be [offset, symbol]");
        Coord c = entry[0].get<Coord>();
        if (static_cast<int>(c.size()) != dim) throw input_error("pattern offset dimension mismatch");
        int sym = alpha->id(entry[1].get<std::string>());
        cells.emplace_back(c, sym);
        offs.push_back(c);
    }
    Shape dom(dim, offs);
    if (dom.size() != cells.size()) throw input_error("pattern: duplicate offsets");
    std::vector<int> syms(dom.size());
    for (const auto& [c, sym] : cells) syms[dom.index_of(c)] = sym;
    return Pattern(alpha, dom, syms);
}

inline Syntax syntax_from_json(const nlohmann::json& j) {
    AlphabetPtr alpha = make_alphabet(j.at("alphabet").get<std::vector<std::string>>());
    int dim = j.at("dimension").get<int>();
    std::vector<Coord> offs = j.at("shape").get<std::vector<Coord>>();
    Shape shape(dim, offs);
    std::string mode_s = j.at("mode").get<std::string>();
    Mode mode;
    if (mode_s == "allowed")
        mode = Mode::Allowed;
    else if (mode_s == "forbidden")
        mode = Mode::Forbidden;
    else
        throw input_error("mode must be \"allowed\" or \"forbidden\"");
    std::vector<Pattern> pats;
    for (const auto& pj : j.at("patterns")) pats.push_back(pattern_from_json(pj, alpha, dim));
    return make_syntax(alpha, dim, shape, mode, std::move(pats));
}

inline nlohmann::json syntax_to_json(const Syntax& s) {
    nlohmann::json j;
    j["alphabet"] = s.alphabet->names();
    j["dimension"] = s.dim;
    j["shape"] = s.shape.offsets;
    j["mode"] = s.mode == Mode::Allowed ? "allowed" : "forbidden";
    nlohmann::json pats = nlohmann::json::array();
    for (const auto& p : s.patterns) {
        nlohmann::json pj = nlohmann::json::array();
        for (size_t i = 0; i < p.domain.size(); ++i)
            pj.push_back(nlohmann::json::array({p.domain.offsets[i], p.alphabet->name(p.symbols[i])}));
        pats.push_back(pj);
    }
    j["patterns"] = pats;
    return j;
}

// Grid text: one row per line, symbols single-space separated, first line is
// the row with the largest axis-2 coordinate. "." marks absent cells.
inline std::string pattern_to_grid(const Pattern& p) {
    if (p.domain.dim > 2) throw input_error("grid format supports d <= 2");
    std::ostringstream out;
    if (p.domain.dim == 1) {
        Coord lo = p.domain.min_corner(), hi = p.domain.max_corner();
        for (int x = lo[0]; x <= hi[0]; ++x) {
            if (x > lo[0]) out << ' ';
            Coord c{x};
            out << (p.domain.contains(c) ? p.alphabet->name(p.at(c)) : std::string("."));
        }
        out << '\n';
        return out.str();
    }
    Coord lo = p.domain.min_corner(), hi = p.domain.max_corner();
    for (int y = hi[1]; y >= lo[1]; --y) {
        for (int x = lo[0]; x <= hi[0]; ++x) {
            if (x > lo[0]) out << ' ';
            Coord c{x, y};
            out << (p.domain.contains(c) ? p.alphabet->name(p.at(c)) : std::string("."));
        }
        out << '\n';
    }
    return out.str();
}

inline Pattern pattern_from_grid(const AlphabetPtr& alpha, const std::string& text, int dim = 2) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        rows.push_back(std::move(toks));
    }
    if (rows.empty()) throw input_error("grid: empty");
    std::vector<std::pair<Coord, int>> cells;
    int height = static_cast<int>(rows.size());
    for (int r = 0; r < height; ++r) {
        int y = height - r;  // first line has the largest axis-2 coordinate
        for (size_t k = 0; k < rows[static_cast<size_t>(r)].size(); ++k) {
            const std::string& tok = rows[static_cast<size_t>(r)][k];
            if (tok == ".") continue;
            Coord c;
            if (dim == 1)
                c = {static_cast<int>(k) + 1};
            else
                c = {static_cast<int>(k) + 1, y};
            cells.emplace_back(c, alpha->id(tok));
        }
    }
    std::vector<Coord> offs;
    offs.reserve(cells.size());
    for (auto& [c, sym] : cells) offs.push_back(c);
    Shape dom(dim, offs);
    std::vector<int> syms(dom.size());
    for (auto& [c, sym] : cells) syms[dom.index_of(c)] = sym;
    return Pattern(alpha, dom, syms);
}

}  // namespace sft
