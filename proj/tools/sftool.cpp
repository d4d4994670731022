// sftool: command-line front end. TSV/ASCII output only, deterministic bytes
// for fixed inputs. Exit codes: 0 success, 1 input/usage error, 2 budget
// exhaustion (with partial output).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sft/base_x.hpp"
#include "sft/core.hpp"
#include "sft/counting.hpp"
#include "sft/geometry.hpp"
#include "sft/irreducible.hpp"
#include "sft/machine.hpp"
#include "sft/realization.hpp"
#include "sft/substitution.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct Ctx {
    std::ostream* out = &std::cout;
    sft::Budgets budgets;
    bool budget_hit = false;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw sft::input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void meta_header(Ctx& ctx) {
    *ctx.out << "# sftool " << kVersion << "\n";
    *ctx.out << "# budgets max_enum=" << ctx.budgets.max_enum << " max_states=" << ctx.budgets.max_states
             << " max_nodes=" << ctx.budgets.max_nodes << "\n";
}

void meta_input(Ctx& ctx, const std::string& path, const std::string& content) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(sft::fnv1a64(content)));
    *ctx.out << "# input " << path << " fnv64=" << buf << "\n";
}

sft::Syntax load_def(Ctx& ctx, const std::string& path) {
    std::string text = slurp(path);
    meta_input(ctx, path, text);
    return sft::syntax_from_json(nlohmann::json::parse(text));
}

sft::TuringMachine load_machine(Ctx& ctx, const std::string& path) {
    std::string text = slurp(path);
    meta_input(ctx, path, text);
    return sft::machine_from_json(nlohmann::json::parse(text));
}

sft::SubstitutionRule load_rule_arg(Ctx& ctx, const std::string& arg) {
    if (arg == "2net") {
        *ctx.out << "# rule builtin:2net\n";
        return sft::two_net_rule();
    }
    std::string text = slurp(arg);
    meta_input(ctx, arg, text);
    return sft::rule_from_json(nlohmann::json::parse(text));
}

// "const:1/2", "list:3/4,5/8", or a JSON file path
sft::RSeq load_rseq(Ctx& ctx, const std::string& arg) {
    if (arg.rfind("const:", 0) == 0 || arg.rfind("list:", 0) == 0) {
        *ctx.out << "# target " << arg << "\n";
        return sft::RSeq::parse(arg);
    }
    std::string text = slurp(arg);
    meta_input(ctx, arg, text);
    return sft::RSeq::from_json(nlohmann::json::parse(text));
}

std::string rq(const mpq_class& q) { return sft::rational_str(q); }
std::string dq(const mpq_class& q) { return sft::decimal_str(q); }

void print_log_cols(Ctx& ctx, const sft::LogValue& v) {
    if (!v.finite) {
        *ctx.out << "-inf\t-inf\t-inf\t-inf";
        return;
    }
    *ctx.out << rq(v.iv.lo) << "\t" << dq(v.iv.lo) << "\t" << rq(v.iv.hi) << "\t" << dq(v.iv.hi);
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw sft::input_error("empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    if (const char* v = std::getenv("SFTOOL_MAX_ENUM")) ctx.budgets.max_enum = std::strtoull(v, nullptr, 10);
    if (const char* v = std::getenv("SFTOOL_MAX_STATES")) ctx.budgets.max_states = std::strtoull(v, nullptr, 10);
    if (const char* v = std::getenv("SFTOOL_MAX_NODES")) ctx.budgets.max_nodes = std::strtoull(v, nullptr, 10);

    CLI::App app{"multidimensional shift-of-finite-type toolkit"};
    app.require_subcommand(1);
    std::ofstream out_file;
    std::string out_path;
    app.add_option("--out", out_path, "write output to a file instead of standard output");

    // callbacks run inside parse, so bind --out before parsing
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--out") {
            out_file.open(argv[i + 1], std::ios::binary);
            if (!out_file) {
                std::cerr << "error: cannot open output file " << argv[i + 1] << "\n";
                return 1;
            }
            ctx.out = &out_file;
            break;
        }
    }

    int exit_code = 0;
    auto run = [&](const std::function<void()>& fn) {
        return [&ctx, fn, &exit_code]() {
            try {
                fn();
            } catch (const sft::budget_error& e) {
                std::cerr << "budget: " << e.what() << "\n";
                exit_code = 2;
            }
        };
    };

    // ---- sft group -------------------------------------------------------
    auto* sft_cmd = app.add_subcommand("sft", "syntax-level counting and entropy bounds");
    sft_cmd->require_subcommand(1);

    std::string def_path, def2_path, map_path;
    int opt_n = 4, opt_m = 0, opt_nmax = 6, opt_precision = 2, opt_budget = 8;
    std::string opt_tol = "1/1000000000";

    auto* c_count = sft_cmd->add_subcommand("count", "count locally admissible patterns on a rectangle");
    c_count->add_option("--def", def_path, "SFT definition file (JSON)")->required();
    c_count->add_option("--n", opt_n, "rectangle width")->required();
    c_count->add_option("--m", opt_m, "rectangle height (d=2; defaults to --n)");
    c_count->callback(run([&] {
        meta_header(ctx);
        sft::Syntax s = load_def(ctx, def_path);
        *ctx.out << "n\tm\tcount\tlog2_per_site_lo\tlog2_per_site_lo_dec\tlog2_per_site_hi\tlog2_per_site_hi_dec\n";
        if (s.dim == 1) {
            mpz_class c = sft::count_box(s, {opt_n}, ctx.budgets);
            sft::LogValue lv = sft::per_site(sft::log2_value(c), opt_n);
            *ctx.out << opt_n << "\t1\t" << c << "\t";
            print_log_cols(ctx, lv);
            *ctx.out << "\n";
        } else if (s.dim == 2) {
            int m = opt_m > 0 ? opt_m : opt_n;
            sft::CountResult r = sft::count_rect(s, opt_n, m, ctx.budgets);
            *ctx.out << opt_n << "\t" << m << "\t" << r.count << "\t";
            print_log_cols(ctx, r.log2_per_site);
            *ctx.out << "\n";
        } else {
            mpz_class c = sft::count_box(s, std::vector<int>(static_cast<size_t>(s.dim), opt_n), ctx.budgets);
            long sites = 1;
            for (int i = 0; i < s.dim; ++i) sites *= opt_n;
            *ctx.out << opt_n << "\t" << opt_n << "\t" << c << "\t";
            print_log_cols(ctx, sft::per_site(sft::log2_value(c), sites));
            *ctx.out << "\n";
        }
    }));

    auto* c_upper = sft_cmd->add_subcommand("entropy-upper", "upper entropy bound terms (1/n^d) log2 of the locally admissible count");
    c_upper->add_option("--def", def_path)->required();
    c_upper->add_option("--n-max", opt_nmax, "largest region side");
    c_upper->callback(run([&] {
        meta_header(ctx);
        sft::Syntax s = load_def(ctx, def_path);
        sft::EntropyBoundSeq seq = sft::upper_entropy_terms(s, opt_nmax, ctx.budgets);
        *ctx.out << "n\tu_lo\tu_lo_dec\tu_hi\tu_hi_dec\n";
        for (const auto& [n, u] : seq.terms) {
            *ctx.out << n << "\t";
            print_log_cols(ctx, u);
            *ctx.out << "\n";
        }
        if (!seq.complete) {
            *ctx.out << "# budget exhausted; sequence is partial\n";
            ctx.budget_hit = true;
        }
    }));

    auto* c_1d = sft_cmd->add_subcommand("entropy-1d", "exact 1D entropy via the transfer graph spectral radius");
    c_1d->add_option("--def", def_path)->required();
    c_1d->add_option("--tol", opt_tol, "interval width tolerance (rational)");
    c_1d->callback(run([&] {
        meta_header(ctx);
        sft::Syntax s = load_def(ctx, def_path);
        sft::LogValue h = sft::spectral_entropy_1d(s, sft::parse_rational(opt_tol), ctx.budgets);
        *ctx.out << "h_lo\th_lo_dec\th_hi\th_hi_dec\n";
        print_log_cols(ctx, h);
        *ctx.out << "\n";
    }));

    auto* c_irr = sft_cmd->add_subcommand("entropy-irreducible", "two-sided entropy bracket for an irreducible SFT");
    c_irr->add_option("--def", def_path)->required();
    c_irr->add_option("--precision", opt_precision, "target: bracket width < 1/precision")->required();
    c_irr->add_option("--budget", opt_budget, "scale cap for the admissibility search");
    c_irr->callback(run([&] {
        meta_header(ctx);
        sft::Syntax s = load_def(ctx, def_path);
        sft::IrreducibleBudgets ib;
        ib.decide_n_max = opt_budget;
        ib.search = ctx.budgets;
        sft::GlobalAdmissibility oracle(s, ib);
        sft::SqueezeResult sq = sft::entropy_to_precision(oracle, opt_precision);
        *ctx.out << "precision\twitness_n\tr_prime\tlower\tlower_dec\tupper\tupper_dec\twidth\tsuccess\n";
        *ctx.out << sq.precision << "\t" << sq.witness_k << "\t" << sq.r_prime << "\t" << rq(sq.lower) << "\t"
                 << dq(sq.lower) << "\t" << rq(sq.upper) << "\t" << dq(sq.upper) << "\t" << rq(sq.width) << "\t"
                 << (sq.success ? 1 : 0) << "\n";
        if (!sq.success) ctx.budget_hit = true;
    }));

    auto* c_sofic = sft_cmd->add_subcommand("sofic-count", "distinct one-block images of locally admissible patterns");
    c_sofic->add_option("--def", def_path)->required();
    c_sofic->add_option("--map", map_path, "block map file: {\"target\":[...],\"map\":{src:tgt}}")->required();
    c_sofic->add_option("--n", opt_n)->required();
    c_sofic->callback(run([&] {
        meta_header(ctx);
        sft::Syntax s = load_def(ctx, def_path);
        std::string text = slurp(map_path);
        meta_input(ctx, map_path, text);
        nlohmann::json j = nlohmann::json::parse(text);
        sft::AlphabetPtr target = sft::make_alphabet(j.at("target").get<std::vector<std::string>>());
        std::vector<int> mp(static_cast<size_t>(s.alphabet->size()), -1);
        for (int i = 0; i < s.alphabet->size(); ++i)
            mp[static_cast<size_t>(i)] = target->id(j.at("map").at(s.alphabet->name(i)).get<std::string>());
        sft::BlockMap bm(s.alphabet, target, mp);
        sft::CountResult r = sft::sofic_image_count(s, bm, opt_n, ctx.budgets);
        *ctx.out << "n\tcount\tlog2_per_site_lo\tlog2_per_site_lo_dec\tlog2_per_site_hi\tlog2_per_site_hi_dec\n";
        *ctx.out << opt_n << "\t" << r.count << "\t";
        print_log_cols(ctx, r.log2_per_site);
        *ctx.out << "\n";
    }));

    auto* c_prod = sft_cmd->add_subcommand("product", "product SFT (one-step form), JSON on stdout");
    c_prod->add_option("--def", def_path)->required();
    c_prod->add_option("--def2", def2_path)->required();
    c_prod->callback(run([&] {
        sft::Syntax a = load_def(ctx, def_path);
        sft::Syntax b = load_def(ctx, def2_path);
        *ctx.out << sft::syntax_to_json(sft::product(a, b)).dump(2) << "\n";
    }));

    auto* c_lift = sft_cmd->add_subcommand("lift", "dimension lift d -> d+1, JSON on stdout");
    c_lift->add_option("--def", def_path)->required();
    c_lift->callback(run([&] {
        sft::Syntax a = load_def(ctx, def_path);
        *ctx.out << sft::syntax_to_json(sft::lift_dimension(a)).dump(2) << "\n";
    }));

    auto* c_recode = sft_cmd->add_subcommand("recode", "one-step recoding, JSON on stdout");
    c_recode->add_option("--def", def_path)->required();
    c_recode->callback(run([&] {
        sft::Syntax a = load_def(ctx, def_path);
        sft::RecodeResult r = sft::recode_one_step(a);
        nlohmann::json j = sft::syntax_to_json(r.syntax);
        j["window"] = r.window.offsets;
        *ctx.out << j.dump(2) << "\n";
    }));

    // ---- subst group -----------------------------------------------------
    auto* subst_cmd = app.add_subcommand("subst", "substitution systems");
    subst_cmd->require_subcommand(1);
    std::string rule_arg = "2net", seed_sym;
    int opt_depth = 3, opt_mm = 1;
    long opt_bign = 8;

    auto* s_expand = subst_cmd->add_subcommand("expand", "n-fold expansion of a seed symbol");
    s_expand->add_option("--rule", rule_arg, "builtin name (2net) or rule file");
    s_expand->add_option("--seed", seed_sym, "seed symbol")->required();
    s_expand->add_option("--n", opt_n, "expansion level")->required();
    s_expand->callback(run([&] {
        meta_header(ctx);
        sft::SubstitutionRule rule = load_rule_arg(ctx, rule_arg);
        sft::SBlock b = sft::expand(rule, rule.alphabet->id(seed_sym), opt_n);
        *ctx.out << sft::pattern_to_grid(sft::sblock_pattern(rule, b));
    }));

    auto* s_check = subst_cmd->add_subcommand("check-derivation", "bounded unique-derivation check");
    s_check->add_option("--rule", rule_arg);
    s_check->add_option("--depth", opt_depth, "block level examined");
    s_check->callback(run([&] {
        meta_header(ctx);
        sft::SubstitutionRule rule = load_rule_arg(ctx, rule_arg);
        sft::DerivationCheck dc = sft::check_unique_derivation(rule, opt_depth);
        if (dc.unique)
            *ctx.out << "unique up to depth " << opt_depth << "\n";
        else
            *ctx.out << "ambiguous: " << dc.witness << "\n";
    }));

    auto* s_zero = subst_cmd->add_subcommand("zero-bound", "per-site upper bound on the block count");
    s_zero->add_option("--rule", rule_arg);
    s_zero->add_option("--n", opt_bign, "region side")->required();
    s_zero->add_option("--m", opt_mm, "decomposition scale k^m")->required();
    s_zero->callback(run([&] {
        meta_header(ctx);
        sft::SubstitutionRule rule = load_rule_arg(ctx, rule_arg);
        mpq_class v = sft::zero_entropy_bound(rule, opt_bign, opt_mm);
        *ctx.out << "bound\tbound_dec\n" << rq(v) << "\t" << dq(v) << "\n";
    }));

    // ---- geom group ------------------------------------------------------
    auto* geom_cmd = app.add_subcommand("geom", "net and board geometry");
    geom_cmd->require_subcommand(1);
    std::string opt_format = "ascii";
    int opt_bigN = 1;

    auto* g_iset = geom_cmd->add_subcommand("iset", "the level-n index set");
    g_iset->add_option("--n", opt_n)->required();
    g_iset->callback(run([&] {
        meta_header(ctx);
        auto vals = sft::i_set(opt_n);
        *ctx.out << "k\tvalue\n";
        for (size_t i = 0; i < vals.size(); ++i) *ctx.out << (i + 1) << "\t" << vals[i] << "\n";
    }));

    auto* g_board = geom_cmd->add_subcommand("board", "render the n-board with direction symbols");
    g_board->add_option("--n", opt_n)->required();
    g_board->add_option("--format", opt_format, "ascii|tsv");
    g_board->callback(run([&] {
        meta_header(ctx);
        sft::BoardSpec b = sft::board(opt_n);
        if (opt_format == "ascii") {
            for (long y = b.side; y >= 1; --y) {
                std::string line;
                for (long x = 1; x <= b.side; ++x)
                    line += b.in_board(x, y) ? sft::dir_symbol_glyph(b.direction_mask(x, y)) : std::string(" ");
                *ctx.out << line << "\n";
            }
        } else if (opt_format == "tsv") {
            *ctx.out << "x\ty\tsymbol\tnode\n";
            for (const auto& c : b.cells())
                *ctx.out << c[0] << "\t" << c[1] << "\t" << sft::dir_symbol_name(b.direction_mask(c[0], c[1]))
                         << "\t" << (b.is_node(c[0], c[1]) ? 1 : 0) << "\n";
        } else {
            throw sft::input_error("format must be ascii or tsv");
        }
    }));

    auto* g_mseq = geom_cmd->add_subcommand("mseq", "equidistributed positions with complete residues mod 2^N");
    g_mseq->add_option("--N", opt_bigN)->required();
    g_mseq->callback(run([&] {
        meta_header(ctx);
        sft::ResiduePositions rp = sft::residue_positions(opt_bigN);
        *ctx.out << "# q " << rp.q << "\n";
        *ctx.out << "t\tposition\tindex\tresidue\n";
        for (size_t i = 0; i < rp.positions.size(); ++i)
            *ctx.out << (i + 1) << "\t" << rp.positions[i] << "\t" << rp.indices[i] << "\t" << rp.residues[i]
                     << "\n";
    }));

    auto* g_density = geom_cmd->add_subcommand("density", "board cell density |B_n| / 25^n");
    g_density->add_option("--n", opt_n)->required();
    g_density->callback(run([&] {
        meta_header(ctx);
        mpq_class d = sft::board_density(opt_n);
        *ctx.out << "n\tdensity\tdensity_dec\n" << opt_n << "\t" << rq(d) << "\t" << dq(d) << "\n";
    }));

    // ---- base group ------------------------------------------------------
    auto* base_cmd = app.add_subcommand("base", "marked-column base patterns");
    base_cmd->require_subcommand(1);
    std::string opt_levels;

    auto* b_build = base_cmd->add_subcommand("build", "build the n x n base window for a level coloring");
    b_build->add_option("--levels", opt_levels, "bits rho_1..rho_L, e.g. 101")->required();
    b_build->add_option("--n", opt_n)->required();
    b_build->add_option("--format", opt_format, "ascii");
    b_build->callback(run([&] {
        meta_header(ctx);
        sft::XPattern p = sft::build_x_pattern(sft::LevelColoring::parse(opt_levels), opt_n);
        *ctx.out << sft::x_pattern_ascii(p);
    }));

    auto* b_delta = base_cmd->add_subcommand("delta", "exact density sum rho_n 2^-n");
    b_delta->add_option("--levels", opt_levels)->required();
    b_delta->callback(run([&] {
        meta_header(ctx);
        mpq_class d = sft::delta_exact(sft::LevelColoring::parse(opt_levels));
        *ctx.out << "delta\tdelta_dec\n" << rq(d) << "\t" << dq(d) << "\n";
    }));

    auto* b_freq = base_cmd->add_subcommand("freq", "column frequency of 1-bits over 1..n");
    b_freq->add_option("--levels", opt_levels)->required();
    b_freq->add_option("--n", opt_n)->required();
    b_freq->callback(run([&] {
        meta_header(ctx);
        mpq_class f = sft::column_frequency(sft::LevelColoring::parse(opt_levels), opt_n);
        *ctx.out << "n\tfreq\tfreq_dec\n" << opt_n << "\t" << rq(f) << "\t" << dq(f) << "\n";
    }));

    // ---- tm group --------------------------------------------------------
    auto* tm_cmd = app.add_subcommand("tm", "Turing machine runs and board superpositions");
    tm_cmd->require_subcommand(1);
    std::string machine_path, opt_input;
    long opt_steps = 100;
    bool opt_trace = false;

    auto* t_run = tm_cmd->add_subcommand("run", "bounded simulation");
    t_run->add_option("--machine", machine_path)->required();
    t_run->add_option("--input", opt_input, "0/1 input bits (cells beyond read 0)")->required();
    t_run->add_option("--steps", opt_steps);
    t_run->add_flag("--trace", opt_trace, "print the configuration history");
    t_run->callback(run([&] {
        meta_header(ctx);
        sft::TuringMachine m = load_machine(ctx, machine_path);
        std::vector<uint8_t> bits;
        for (char c : opt_input) bits.push_back(c == '1' ? 1 : 0);
        long width = opt_trace ? static_cast<long>(bits.size()) + opt_steps : 0;
        sft::RunResult r = sft::run_bounded(m, sft::bits_input(m, bits), opt_steps, width);
        if (opt_trace) {
            for (size_t t = 0; t < r.rows.size(); ++t) {
                *ctx.out << "t=" << t << "\t";
                for (const auto& c : r.rows[t]) {
                    *ctx.out << m.tape[static_cast<size_t>(c.data)];
                    if (c.has_state()) *ctx.out << "[" << m.states[static_cast<size_t>(c.state)] << "]";
                    *ctx.out << " ";
                }
                *ctx.out << "\n";
            }
        }
        if (r.halted)
            *ctx.out << "halted\t" << r.halt_step << "\n";
        else
            *ctx.out << "running\t" << opt_steps << "\n";
    }));

    auto* t_board = tm_cmd->add_subcommand("board", "superimpose a run over the n-board");
    t_board->add_option("--machine", machine_path)->required();
    t_board->add_option("--n", opt_n, "board level")->required();
    t_board->add_option("--input", opt_input, "one bit per node column")->required();
    t_board->callback(run([&] {
        meta_header(ctx);
        sft::TuringMachine m = load_machine(ctx, machine_path);
        sft::BoardSpec b = sft::board(opt_n);
        std::vector<uint8_t> bits;
        for (char c : opt_input) bits.push_back(c == '1' ? 1 : 0);
        sft::SuperimposeResult r = sft::board_superimpose(m, b, bits);
        if (!r.feasible) {
            *ctx.out << "infeasible\thalt_step=" << r.halt_step << "\n";
            return;
        }
        auto cfg_str = [&](const sft::CellConfig& c) {
            std::string s = m.tape[static_cast<size_t>(c.data)];
            if (c.has_state()) s += "[" + m.states[static_cast<size_t>(c.state)] + "]";
            return s;
        };
        *ctx.out << "x\ty\tkind\tpayload\n";
        for (const auto& [coord, an] : r.run.annotations) {
            *ctx.out << coord[0] << "\t" << coord[1] << "\t";
            switch (an.kind) {
                case sft::BoardCellKind::Node:
                    *ctx.out << "node\t" << cfg_str(an.node);
                    break;
                case sft::BoardCellKind::HapPair:
                    *ctx.out << "pair\t(" << cfg_str(an.left) << "," << cfg_str(an.right) << ")";
                    break;
                case sft::BoardCellKind::VertTriple:
                    *ctx.out << "triple\t(" << (an.has_u ? cfg_str(an.u) : "blank") << "," << cfg_str(an.v) << ","
                             << (an.has_w ? cfg_str(an.w) : "blank") << ")";
                    break;
            }
            *ctx.out << "\n";
        }
    }));

    // ---- prune -----------------------------------------------------------
    auto* prune_cmd = app.add_subcommand("prune", "density pruning loop");
    prune_cmd->require_subcommand(1);
    std::string opt_rspec = "const:1/2";
    int opt_maxN = 8;

    auto* p_run = prune_cmd->add_subcommand("run", "run the pruning loop on a level coloring");
    p_run->add_option("--levels", opt_levels)->required();
    p_run->add_option("--r", opt_rspec, "const:P/Q, list:V1,V2,..., or a target file");
    p_run->add_option("--max-N", opt_maxN);
    p_run->callback(run([&] {
        meta_header(ctx);
        sft::RSeq r = load_rseq(ctx, opt_rspec);
        sft::PruneOutcome o = sft::prune_run(sft::LevelColoring::parse(opt_levels), r, opt_maxN);
        *ctx.out << "N\tr\tr_dec\tdelta\tdelta_dec\n";
        for (const auto& st : o.trace)
            *ctx.out << st.N << "\t" << rq(st.r) << "\t" << dq(st.r) << "\t" << rq(st.delta) << "\t"
                     << dq(st.delta) << "\n";
        if (o.halted)
            *ctx.out << "# halted at N=" << o.halt_N << "\n";
        else
            *ctx.out << "# survived through N=" << opt_maxN << "\n";
    }));

    // ---- realize ---------------------------------------------------------
    std::string opt_target = "const:1/2", opt_h, opt_nlist = "4,8,16";
    int opt_L = 4, opt_NN = 8;
    bool opt_density_report = false;

    auto* realize_cmd = app.add_subcommand("realize", "certified entropy brackets around a right-r.e. target");
    realize_cmd->add_option("--target", opt_target, "r-sequence: const:P/Q, list:..., or file")->required();
    realize_cmd->add_option("--h", opt_h, "claimed limit (rational)");
    realize_cmd->add_option("--L", opt_L, "level coloring length bound");
    realize_cmd->add_option("--N", opt_NN, "pruning iterations");
    realize_cmd->add_option("--n", opt_nlist, "comma-separated region sides");
    realize_cmd->add_flag("--density-report", opt_density_report, "also emit the density realization report");
    realize_cmd->callback(run([&] {
        meta_header(ctx);
        sft::TargetSpec t;
        t.r = load_rseq(ctx, opt_target);
        if (!opt_h.empty()) t.h_claimed = sft::parse_rational(opt_h);
        std::vector<int> ns = parse_int_list(opt_nlist);
        *ctx.out << "# lower bounds are witnessed by a surviving coloring; upper bounds are the asymptotic "
                    "form (cited constant 2^{-n+1})\n";
        *ctx.out << "n\tlower\tlower_dec\tupper\tupper_dec\twitness\tupper_kind\n";
        for (int n : ns) {
            sft::EntropyBracket br = sft::entropy_bracket(t, n, opt_L, opt_NN);
            *ctx.out << n << "\t" << rq(br.lower) << "\t" << dq(br.lower) << "\t" << rq(br.upper) << "\t"
                     << dq(br.upper) << "\t'" << br.witness.str() << "'\tasymptotic\n";
        }
        if (opt_density_report) {
            *ctx.out << "# density report\n";
            *ctx.out << "n\tmax_freq\tmax_freq_dec\tgap\twitness\n";
            for (const auto& row : sft::density_realization_report(t, ns, opt_L, opt_NN)) {
                *ctx.out << row.n << "\t" << rq(row.max_frequency) << "\t" << dq(row.max_frequency) << "\t"
                         << (row.gap ? rq(*row.gap) : std::string("-")) << "\t'" << row.witness.str() << "'\n";
            }
        }
    }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const sft::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (ctx.budget_hit && exit_code == 0) exit_code = 2;
    return exit_code;
}
