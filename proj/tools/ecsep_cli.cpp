#include "CLI11.hpp"
#include "ecsep/pipeline.hpp"
#include "ecsep/smoothlab.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitFactored = 0;
constexpr int kExitExhausted = 2;
constexpr int kExitBadInput = 64;

std::optional<ecsep::Int> parse_int(const std::string& s) {
    ecsep::Int v;
    if (v.set_str(s, 10) != 0) return std::nullopt;
    return v;
}

std::optional<ecsep::Rat> parse_rat(const std::string& s) {
    mpq_class r;
    if (r.set_str(s, 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
}

bool valid_modulus(const ecsep::Int& N) {
    return N > 1 && ecsep::gcd(N, 6) == 1;
}

int cmd_factor(const std::string& n_str, unsigned long b_max, unsigned long trials,
               unsigned long seed, const std::string& c_str, unsigned workers,
               const std::string& json_path) {
    auto N = parse_int(n_str);
    if (!N || !valid_modulus(*N)) {
        std::cerr << "factor: N must be an integer > 1 and coprime to 6\n";
        return kExitBadInput;
    }
    auto c = parse_rat(c_str);
    if (!c || *c <= 0) {
        std::cerr << "factor: --c must be a positive rational\n";
        return kExitBadInput;
    }

    ecsep::PipelineConfig cfg;
    cfg.trial_budget = trials;
    cfg.seed = seed;
    cfg.hasse_scale_c = *c;
    cfg.workers = workers;
    if (b_max > 0) {
        std::vector<unsigned long> pruned;
        for (unsigned long b : cfg.b_schedule)
            if (b <= b_max) pruned.push_back(b);
        if (pruned.empty() || pruned.back() < b_max) pruned.push_back(b_max);
        cfg.b_schedule = pruned;
    }

    ecsep::PipelineResult res;
    try {
        res = ecsep::run_pipeline(*N, cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "factor: " << e.what() << "\n";
        return kExitBadInput;
    }

    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) {
            std::cerr << "factor: cannot write " << json_path << "\n";
            return kExitBadInput;
        }
        ecsep::write_json_lines(res, out);
    }

    if (res.factored) {
        std::cout << "p = " << res.p.get_str() << "\nq = " << res.q.get_str() << "\n";
        return kExitFactored;
    }
    unsigned long still = 0, noncons = 0;
    for (const auto& r : res.log) {
        if (r.outcome == ecsep::TrialOutcome::StillFinite) ++still;
        if (r.outcome == ecsep::TrialOutcome::NotConsistent) ++noncons;
    }
    std::cout << "no factor found: " << res.log.size() << " trials (" << still
              << " still finite, " << noncons << " inconsistent)\n";
    return kExitExhausted;
}

int cmd_order(const std::string& n_str, const std::string& b1s, const std::string& b2s,
              const std::string& xs, const std::string& ys, unsigned long B) {
    auto N = parse_int(n_str);
    auto b1 = parse_int(b1s), b2 = parse_int(b2s), x = parse_int(xs), y = parse_int(ys);
    if (!N || !valid_modulus(*N) || !b1 || !b2 || !x || !y || B < 2) {
        std::cerr << "order: bad arguments\n";
        return kExitBadInput;
    }
    try {
        ecsep::SemiprimeContext ctx = ecsep::SemiprimeContext::make(*N);
        ecsep::CurveCheck cc = ecsep::make_e2(*b1, *b2, ctx);
        if (cc.kind == ecsep::CurveCheck::Kind::Factor) {
            std::cout << "factor = " << cc.g.get_str() << "\n";
            return kExitFactored;
        }
        if (cc.kind == ecsep::CurveCheck::Kind::Degenerate) {
            std::cerr << "order: degenerate curve\n";
            return kExitBadInput;
        }
        ecsep::PointZN Q{false, ecsep::mod(*x, *N), ecsep::mod(*y, *N)};
        if (!ecsep::on_curve(Q, cc.curve, *N)) {
            std::cerr << "order: point is not on the curve\n";
            return kExitBadInput;
        }
        ecsep::HasseWindow w = ecsep::HasseWindow::at_scale(ctx);
        ecsep::CurveW E = ecsep::e2_to_weierstrass(cc.curve, *N);
        ecsep::SeparationReport rep = ecsep::staged_multiply(E, Q, B, w, ctx);
        if (rep.separated()) {
            std::cout << "factor = " << rep.g.get_str() << " (at prime " << rep.at_prime
                      << ")\n";
            return kExitFactored;
        }
        if (rep.non_separating()) {
            std::cout << "t_min = " << rep.t_min << "\nd = " << rep.order.get_str() << "\n";
            return kExitFactored;
        }
        std::cout << "point still finite through B = " << B << "\n";
        return kExitExhausted;
    } catch (const std::exception& e) {
        std::cerr << "order: " << e.what() << "\n";
        return kExitBadInput;
    }
}

int cmd_demo() {
    ecsep::DemoTranscript t = ecsep::demo_example();
    for (const auto& c : t.checks)
        std::cout << (c.ok ? "  ok  " : " FAIL ") << c.name << ": expected " << c.expected
                  << ", got " << c.actual << "\n";
    if (t.all_ok) {
        std::cout << "demo: all values match\n";
        return kExitFactored;
    }
    std::cout << "demo: MISMATCH\n";
    return 1;
}

int cmd_classify(const std::string& n_str, const std::string& ps, const std::string& qs,
                 const std::string& b1s, const std::string& b2s, const std::string& xs,
                 const std::string& ys, unsigned long B) {
    auto N = parse_int(n_str);
    auto p = parse_int(ps), q = parse_int(qs);
    auto b1 = parse_int(b1s), b2 = parse_int(b2s), x = parse_int(xs), y = parse_int(ys);
    if (!N || !p || !q || !b1 || !b2 || !x || !y || B < 2) {
        std::cerr << "classify: bad arguments\n";
        return kExitBadInput;
    }
    try {
        ecsep::SemiprimeContext ctx =
            ecsep::SemiprimeContext::make(*N, ecsep::Rat(4), ecsep::Rat(1),
                                          std::make_pair(*p, *q));
        ecsep::CurveE2 curve{ecsep::mod(*b1, *N), ecsep::mod(*b2, *N)};
        ecsep::PointZN Q{false, ecsep::mod(*x, *N), ecsep::mod(*y, *N)};
        if (!ecsep::on_curve(Q, curve, *N)) {
            std::cerr << "classify: point is not on the curve\n";
            return kExitBadInput;
        }
        ecsep::PairClassification pc = ecsep::classify_pair(curve, Q, B, ctx);
        const char* name = "none";
        switch (pc.clause) {
            case ecsep::PairClassification::Clause::SeparatesBelowB: name = "separates-below-B"; break;
            case ecsep::PairClassification::Clause::ConsistentAtB: name = "consistent-at-B"; break;
            case ecsep::PairClassification::Clause::SmoothShareAtB: name = "smooth-share-at-B"; break;
            case ecsep::PairClassification::Clause::None: name = "none"; break;
        }
        std::cout << "clause = " << name << "\nord_p = " << pc.ord_p.get_str()
                  << "\nord_q = " << pc.ord_q.get_str() << "\nt_min = " << pc.t_min
                  << "\nl_min = " << (pc.l_min ? std::to_string(pc.l_min) : "none") << "\n";
        return kExitFactored;
    } catch (const std::exception& e) {
        std::cerr << "classify: " << e.what() << "\n";
        return kExitBadInput;
    }
}

int cmd_smooth_lab(const std::vector<std::string>& xs, const std::string& alpha_s,
                   const std::string& beta_s, const std::vector<std::string>& grid_s,
                   const std::string& csv_path) {
    auto alpha = parse_rat(alpha_s);
    auto beta = parse_rat(beta_s);
    if (!alpha || *alpha <= 0 || !beta || *beta < 0 || *beta > 1 || xs.empty()) {
        std::cerr << "smooth-lab: bad arguments\n";
        return kExitBadInput;
    }
    std::vector<ecsep::Int> x_list;
    for (const auto& s : xs) {
        auto v = parse_int(s);
        if (!v || *v < 16) {
            std::cerr << "smooth-lab: scales must be integers >= 16\n";
            return kExitBadInput;
        }
        x_list.push_back(*v);
    }
    std::vector<ecsep::Rat> grid;
    for (const auto& s : grid_s) {
        auto v = parse_rat(s);
        if (!v || *v < 0) {
            std::cerr << "smooth-lab: theta grid entries must be nonnegative rationals\n";
            return kExitBadInput;
        }
        grid.push_back(*v);
    }
    try {
        ecsep::ConjectureTable table = ecsep::conjecture_table(x_list, *alpha, *beta, grid);
        if (csv_path.empty()) {
            ecsep::write_csv(table, std::cout);
        } else {
            std::ofstream out(csv_path);
            if (!out) {
                std::cerr << "smooth-lab: cannot write " << csv_path << "\n";
                return kExitBadInput;
            }
            ecsep::write_csv(table, out);
        }
        if (table.theta)
            std::cerr << "theta = " << table.theta->get_str() << "\n";
        else
            std::cerr << "theta = none in grid\n";
        return kExitFactored;
    } catch (const std::exception& e) {
        std::cerr << "smooth-lab: " << e.what() << "\n";
        return kExitBadInput;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic-curve order-separation factoring toolkit"};
    app.require_subcommand(1);

    std::string n_str, c_str = "1", json_path, b1s, b2s, xs, ys, ps, qs;
    std::string alpha_s = "1", beta_s = "1", csv_path;
    unsigned long b_max = 0, trials = 32, seed = 1, B = 2000;
    unsigned workers = 1;
    std::vector<std::string> x_list, grid;

    auto* factor = app.add_subcommand("factor", "factor an odd semiprime");
    factor->add_option("N", n_str, "modulus")->required();
    factor->add_option("--b-max", b_max, "cap the prime-bound ladder");
    factor->add_option("--trials", trials, "triples per ladder rung");
    factor->add_option("--seed", seed, "random seed");
    factor->add_option("--c", c_str, "window scale as a rational");
    factor->add_option("--workers", workers, "parallel trials");
    factor->add_option("--json", json_path, "write the trial log as JSON lines");

    auto* order = app.add_subcommand("order", "staged multiplication of one point");
    order->add_option("N", n_str, "modulus")->required();
    order->add_option("--b1", b1s)->required();
    order->add_option("--b2", b2s)->required();
    order->add_option("--x", xs)->required();
    order->add_option("--y", ys)->required();
    order->add_option("--b", B, "prime bound")->required();

    auto* demo = app.add_subcommand("demo", "replay the pinned worked example");

    auto* classify = app.add_subcommand("classify", "oracle-mode pair classification");
    classify->add_option("N", n_str, "modulus")->required();
    classify->add_option("--p", ps)->required();
    classify->add_option("--q", qs)->required();
    classify->add_option("--b1", b1s)->required();
    classify->add_option("--b2", b2s)->required();
    classify->add_option("--x", xs)->required();
    classify->add_option("--y", ys)->required();
    classify->add_option("--b", B, "prime bound")->required();

    auto* lab = app.add_subcommand("smooth-lab", "interval smoothness census");
    lab->add_option("--x", x_list, "scales")->required()->expected(-1);
    lab->add_option("--alpha", alpha_s, "L-function alpha");
    lab->add_option("--beta", beta_s, "smooth-part exponent");
    lab->add_option("--theta-grid", grid, "candidate theta values")->expected(-1);
    lab->add_option("--csv", csv_path, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    if (factor->parsed())
        return cmd_factor(n_str, b_max, trials, seed, c_str, workers, json_path);
    if (order->parsed()) return cmd_order(n_str, b1s, b2s, xs, ys, B);
    if (demo->parsed()) return cmd_demo();
    if (classify->parsed()) return cmd_classify(n_str, ps, qs, b1s, b2s, xs, ys, B);
    if (lab->parsed()) return cmd_smooth_lab(x_list, alpha_s, beta_s, grid, csv_path);
    return kExitBadInput;
}
