// Command-line front end: simulate (JSON config), feasible / region
// (rational flags), shells (binary state dump). Exit codes: 0 success,
// 1 bad input, 2 NaN abort (simulate), 3 infeasible (feasible).

#include "bsq/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int cmd_simulate(const std::string& config_path) {
    nlohmann::json j;
    {
        std::ifstream f(config_path);
        if (!f) {
            std::cerr << "error: cannot read config " << config_path << "\n";
            return 1;
        }
        try {
            f >> j;
        } catch (const std::exception& e) {
            std::cerr << "error: malformed config: " << e.what() << "\n";
            return 1;
        }
    }

    static const std::vector<std::string> known = {
        "alpha", "beta", "n", "dt", "t_end", "ic", "seed", "diag_every",
        "lp_exponents", "m", "out_csv", "out_state"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            std::cerr << "error: unknown config key: " << it.key() << "\n";
            return 1;
        }
    }

    bsq::SimConfig cfg;
    std::string out_csv, out_state;
    bsq::Rat alpha_q, beta_q;
    bool have_rat = false;
    try {
        auto scalar = [&](const char* key, auto& dst) {
            if (j.contains(key)) dst = j.at(key).template get<std::decay_t<decltype(dst)>>();
        };
        // alpha/beta accept a JSON number or an exact string like "4/5"
        auto rational = [&](const char* key, double& dst, bsq::Rat& q) {
            if (!j.contains(key)) { q = bsq::parse_rational(bsq::fmt_double(dst)); return; }
            if (j.at(key).is_string()) q = bsq::parse_rational(j.at(key).get<std::string>());
            else q = bsq::parse_rational(bsq::fmt_double(j.at(key).get<double>()));
            dst = bsq::to_double(q);
        };
        rational("alpha", cfg.alpha, alpha_q);
        rational("beta", cfg.beta, beta_q);
        have_rat = true;
        scalar("n", cfg.n);
        scalar("dt", cfg.dt);
        scalar("t_end", cfg.t_end);
        scalar("ic", cfg.ic);
        scalar("seed", cfg.seed);
        scalar("diag_every", cfg.diag_every);
        scalar("lp_exponents", cfg.lp_exponents);
        scalar("m", cfg.m);
        scalar("out_csv", out_csv);
        scalar("out_state", out_state);
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: bad config: " << e.what() << "\n";
        return 1;
    }

    bool inside = false;
    if (have_rat && alpha_q > 0 && alpha_q < 1 && beta_q > 0 && beta_q < 1)
        inside = bsq::is_region_nonempty(alpha_q) && beta_q > 1 - alpha_q && beta_q < bsq::f_alpha(alpha_q);
    std::cout << "inside Theorem 1.1 region: " << (inside ? "yes" : "no") << "\n";

    std::optional<bsq::RunResult> run_out;
    try {
        run_out.emplace(bsq::run(cfg));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    bsq::RunResult& res = *run_out;
    if (res.cfl_warned) std::cerr << "warning: advective CFL bound exceeded\n";

    try {
        if (!out_csv.empty())
            bsq::atomic_write(out_csv, bsq::diagnostics_csv(res.diagnostics, cfg.lp_exponents));
        if (!out_state.empty())
            bsq::atomic_write(out_state, bsq::encode_dump(res.final_state, cfg.alpha, cfg.beta));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (res.nan_abort) {
        std::cerr << "aborted: NaN/Inf detected at step " << res.nan_step << "\n";
        return 2;
    }
    std::cout << "completed " << res.diagnostics.back().step << " steps, t = "
              << bsq::fmt_double(res.final_state.t) << "\n";
    return 0;
}

int cmd_feasible(const std::string& alpha_s, const std::string& beta_s, const std::string& witness_out) {
    auto a = bsq::try_parse_rational(alpha_s);
    auto b = bsq::try_parse_rational(beta_s);
    if (!a || !b || !(*a > 0 && *a < 1 && *b > 0 && *b < 1)) {
        std::cerr << "error: alpha and beta must be rationals in (0,1)\n";
        return 1;
    }
    bsq::FeasibilityInput in{*a, *b};
    auto w = bsq::find_witness(in);
    if (!w) {
        std::cout << "infeasible: (alpha, beta) = (" << bsq::to_string(*a) << ", "
                  << bsq::to_string(*b) << ") admits no exponent witness\n";
        return 3;
    }
    auto violations = bsq::verify_witness(in, *w);
    if (!violations.empty()) {
        // should be unreachable: the search only returns verified tuples
        std::cerr << "error: internal witness verification failure\n";
        return 1;
    }
    nlohmann::ordered_json j = bsq::witness_json(in, *w);
    std::cout << "feasible: witness found\n" << j.dump(2) << "\n";
    if (!witness_out.empty()) bsq::atomic_write(witness_out, j.dump(2) + "\n");
    return 0;
}

int cmd_region(const std::string& amin_s, const std::string& amax_s, const std::string& astep_s,
               const std::string& beta_mode, const std::string& bmin_s, const std::string& bmax_s,
               const std::string& bstep_s, const std::string& out, bool with_witnesses) {
    auto amin = bsq::try_parse_rational(amin_s);
    auto amax = bsq::try_parse_rational(amax_s);
    auto astep = bsq::try_parse_rational(astep_s);
    if (!amin || !amax || !astep || *astep <= 0 || *amin > *amax) {
        std::cerr << "error: bad alpha grid\n";
        return 1;
    }
    std::vector<bsq::Rat> betas;
    if (beta_mode == "grid") {
        auto bmin = bsq::try_parse_rational(bmin_s);
        auto bmax = bsq::try_parse_rational(bmax_s);
        auto bstep = bsq::try_parse_rational(bstep_s);
        if (!bmin || !bmax || !bstep || *bstep <= 0 || *bmin > *bmax) {
            std::cerr << "error: bad beta grid\n";
            return 1;
        }
        for (bsq::Rat b = *bmin; b <= *bmax; b += *bstep) betas.push_back(b);
    } else if (beta_mode != "midpoint") {
        std::cerr << "error: beta-mode must be midpoint or grid\n";
        return 1;
    }
    bsq::RegionMap map;
    try {
        map = bsq::sweep_region(*amin, *amax, *astep, betas, with_witnesses);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    if (!out.empty()) bsq::atomic_write(out, bsq::region_csv(map));
    auto boundary = map.boundary_alpha();
    if (boundary)
        std::cout << "estimated boundary alpha: " << bsq::to_string(*boundary) << " ~= "
                  << bsq::fmt_double(bsq::to_double(*boundary)) << "\n";
    else
        std::cout << "no feasible cell in sweep\n";
    return 0;
}

int cmd_shells(const std::string& dump_path, const std::string& field, double smooth,
               const std::string& out) {
    std::ifstream f(dump_path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot read " << dump_path << "\n";
        return 1;
    }
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    bsq::DecodedState dec{bsq::SimState(bsq::Grid(8)), 0, 0};
    try {
        dec = bsq::decode_dump(bytes);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    bsq::SpectralField target(dec.state.omega.grid());
    if (field == "omega") target = dec.state.omega;
    else if (field == "theta") target = dec.state.theta;
    else if (field == "G") target = bsq::compute_G(dec.state, dec.alpha);
    else {
        std::cerr << "error: field must be omega, theta or G\n";
        return 1;
    }
    std::string csv = bsq::shells_csv(bsq::dyadic_shells(target), smooth);
    if (out.empty()) std::cout << csv;
    else bsq::atomic_write(out, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D fractional Boussinesq simulator and parameter-region checker"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "run a simulation from a JSON config");
    std::string config_path;
    sim->add_option("config", config_path, "path to JSON config")->required();

    auto* feas = app.add_subcommand("feasible", "decide region membership and emit a witness");
    std::string alpha_s, beta_s, witness_out;
    feas->add_option("--alpha", alpha_s, "alpha as decimal or n/d")->required();
    feas->add_option("--beta", beta_s, "beta as decimal or n/d")->required();
    feas->add_option("--witness", witness_out, "write witness JSON here");

    auto* reg = app.add_subcommand("region", "sweep a rational alpha grid");
    std::string amin_s, amax_s, astep_s, bmode = "midpoint", bmin_s, bmax_s, bstep_s, region_out;
    bool with_witnesses = false;
    reg->add_option("--alpha-min", amin_s)->required();
    reg->add_option("--alpha-max", amax_s)->required();
    reg->add_option("--alpha-step", astep_s)->required();
    reg->add_option("--beta-mode", bmode, "midpoint or grid");
    reg->add_option("--beta-min", bmin_s);
    reg->add_option("--beta-max", bmax_s);
    reg->add_option("--beta-step", bstep_s);
    reg->add_option("--out", region_out, "region CSV path");
    reg->add_flag("--witnesses", with_witnesses, "include witness columns");

    auto* sh = app.add_subcommand("shells", "per-shell norms of a dumped field");
    std::string dump_path, field = "omega", shells_out;
    double smooth = 0.0;
    sh->add_option("dump", dump_path, "state dump path")->required();
    sh->add_option("--field", field, "omega | theta | G");
    sh->add_option("--s", smooth, "weight exponent for the 2^{js} column");
    sh->add_option("--out", shells_out, "shell CSV path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (sim->parsed()) return cmd_simulate(config_path);
    if (feas->parsed()) return cmd_feasible(alpha_s, beta_s, witness_out);
    if (reg->parsed())
        return cmd_region(amin_s, amax_s, astep_s, bmode, bmin_s, bmax_s, bstep_s, region_out, with_witnesses);
    if (sh->parsed()) return cmd_shells(dump_path, field, smooth, shells_out);
    return 1;
}
