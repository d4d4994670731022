#pragma once

#include <random>

#include "sft/core.hpp"
#include "sft/machine.hpp"

namespace fixtures {

inline sft::Syntax golden_mean() {
    auto ab = sft::make_alphabet({"0", "1"});
    sft::Shape sh(1, {{0}, {1}});
    return sft::make_syntax(ab, 1, sh, sft::Mode::Forbidden, {sft::Pattern(ab, sh, {1, 1})});
}

inline sft::Pattern hs_window(const sft::AlphabetPtr& ab, int bl, int br, int tl, int tr) {
    sft::Shape cube = sft::unit_cube(2);
    std::vector<int> syms(4);
    syms[cube.index_of({0, 0})] = bl;
    syms[cube.index_of({1, 0})] = br;
    syms[cube.index_of({0, 1})] = tl;
    syms[cube.index_of({1, 1})] = tr;
    return sft::Pattern(ab, cube, syms);
}

// hard squares: no two horizontally or vertically adjacent 1s
inline sft::Syntax hard_squares() {
    auto ab = sft::make_alphabet({"0", "1"});
    std::vector<sft::Pattern> forb;
    for (int m = 0; m < 16; ++m) {
        int bl = m & 1, br = (m >> 1) & 1, tl = (m >> 2) & 1, tr = (m >> 3) & 1;
        if ((bl && br) || (tl && tr) || (bl && tl) || (br && tr)) forb.push_back(hs_window(ab, bl, br, tl, tr));
    }
    return sft::make_syntax(ab, 2, sft::unit_cube(2), sft::Mode::Forbidden, forb);
}

inline sft::Syntax full_shift_k(int k, int d) {
    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back("s" + std::to_string(i));
    return sft::full_shift(sft::make_alphabet(names), d);
}

// all cells forced equal (not irreducible for |alphabet| > 1)
inline sft::Syntax constant_sft(int n_symbols, int d) {
    std::vector<std::string> names;
    for (int i = 0; i < n_symbols; ++i) names.push_back("c" + std::to_string(i));
    auto ab = sft::make_alphabet(names);
    sft::Shape cube = sft::unit_cube(d);
    std::vector<sft::Pattern> allowed;
    for (int s = 0; s < n_symbols; ++s)
        allowed.emplace_back(ab, cube, std::vector<int>(cube.size(), s));
    return sft::make_syntax(ab, d, cube, sft::Mode::Allowed, allowed);
}

// random 2-symbol one-step 2D syntax: each 2x2 window forbidden with prob
// `p_forbid`, but the all-0 window always allowed so the system is nonempty
inline sft::Syntax random_one_step_2d(std::mt19937& rng, double p_forbid = 0.25) {
    auto ab = sft::make_alphabet({"0", "1"});
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<sft::Pattern> forb;
    for (int m = 1; m < 16; ++m) {
        if (coin(rng) < p_forbid)
            forb.push_back(hs_window(ab, m & 1, (m >> 1) & 1, (m >> 2) & 1, (m >> 3) & 1));
    }
    return sft::make_syntax(ab, 2, sft::unit_cube(2), sft::Mode::Forbidden, forb);
}

// ---- machine corpus -------------------------------------------------------

inline sft::TuringMachine machine_from_spec(const nlohmann::json& j) { return sft::machine_from_json(j); }

inline sft::TuringMachine halt_now() {
    return machine_from_spec({{"states", {"h"}},
                              {"tape", {"0", "1"}},
                              {"initial", "h"},
                              {"halting", {"h"}},
                              {"rules", nlohmann::json::array()}});
}

inline sft::TuringMachine scan_right_halt_on_1() {
    return machine_from_spec({{"states", {"s", "h"}},
                              {"tape", {"0", "1"}},
                              {"initial", "s"},
                              {"halting", {"h"}},
                              {"rules", {{"s", "0", "0", "R", "s"}, {"s", "1", "1", "R", "h"}}}});
}

inline sft::TuringMachine loop_right() {
    return machine_from_spec({{"states", {"s"}},
                              {"tape", {"0", "1"}},
                              {"initial", "s"},
                              {"halting", nlohmann::json::array()},
                              {"rules", {{"s", "0", "0", "R", "s"}, {"s", "1", "1", "R", "s"}}}});
}

// writes the complement of what it reads, moving right forever
inline sft::TuringMachine flip_right() {
    return machine_from_spec({{"states", {"s"}},
                              {"tape", {"0", "1"}},
                              {"initial", "s"},
                              {"halting", nlohmann::json::array()},
                              {"rules", {{"s", "0", "1", "R", "s"}, {"s", "1", "0", "R", "s"}}}});
}

// falls off the left edge immediately
inline sft::TuringMachine left_faller() {
    return machine_from_spec({{"states", {"s"}},
                              {"tape", {"0", "1"}},
                              {"initial", "s"},
                              {"halting", nlohmann::json::array()},
                              {"rules", {{"s", "0", "0", "L", "s"}, {"s", "1", "1", "L", "s"}}}});
}

// walks right to the first 1, then walks back left and falls off
inline sft::TuringMachine bouncer() {
    return machine_from_spec({{"states", {"r", "l"}},
                              {"tape", {"0", "1"}},
                              {"initial", "r"},
                              {"halting", nlohmann::json::array()},
                              {"rules",
                               {{"r", "0", "0", "R", "r"},
                                {"r", "1", "1", "L", "l"},
                                {"l", "0", "0", "L", "l"},
                                {"l", "1", "1", "L", "l"}}}});
}

inline std::vector<sft::TuringMachine> machine_corpus() {
    return {halt_now(), scan_right_halt_on_1(), loop_right(), flip_right(), left_faller(), bouncer()};
}

}  // namespace fixtures
