#include "bsq/io.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace {

const std::string cli = BSQ_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("bsq_cli_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const std::string& name) const { return path / name; }
};

int run_cmd(const std::string& args, const fs::path& out) {
    std::string cmd = cli + " " + args + " > " + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    return std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    f << content;
}

} // namespace

TEST_CASE("feasible exit codes and witness JSON") {
    TempDir d;
    CHECK(run_cmd("feasible --alpha 4/5 --beta 3/10 --witness " + (d / "w.json").string(),
                  d / "out.txt") == 0);
    CHECK(slurp(d / "out.txt").find("feasible: witness found") != std::string::npos);

    nlohmann::json j = nlohmann::json::parse(slurp(d / "w.json"));
    auto [in, w] = bsq::witness_from_json(j);
    CHECK(in.alpha == bsq::Rat(4, 5));
    CHECK(in.beta == bsq::Rat(3, 10));
    CHECK(bsq::verify_witness(in, w).empty());
    // derived block round-trips as exact rationals in (0,1)
    for (const char* k : {"mu", "varsigma", "lambda", "l"}) {
        bsq::Rat v = bsq::rat_from_json(j.at("derived").at(k));
        CHECK(v > 0);
        CHECK(v < 1);
    }

    CHECK(run_cmd("feasible --alpha 0.73 --beta 0.27", d / "out.txt") == 3);
    CHECK(slurp(d / "out.txt").find("infeasible") != std::string::npos);

    CHECK(run_cmd("feasible --alpha 1.2 --beta 0.3", d / "out.txt") == 1);
    CHECK(run_cmd("feasible --alpha nonsense --beta 0.3", d / "out.txt") == 1);
    CHECK(run_cmd("feasible --beta 0.3", d / "out.txt") == 1); // missing flag
}

TEST_CASE("simulate: minimal run, header schema, region banner") {
    TempDir d;
    write_file(d / "cfg.json",
               R"({"alpha": 0.8, "beta": 0.3, "n": 32, "dt": 0.001, "t_end": 0.0,)"
               R"( "out_csv": ")" + (d / "diag.csv").string() + R"(",)"
               R"( "out_state": ")" + (d / "state.dump").string() + R"("})");
    CHECK(run_cmd("simulate " + (d / "cfg.json").string(), d / "out.txt") == 0);
    CHECK(slurp(d / "out.txt").find("inside Theorem 1.1 region: yes") != std::string::npos);

    std::string csv = slurp(d / "diag.csv");
    std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header ==
          "step,t,L2_u,L2_theta,Linf_theta,Lp_theta_4,Lp_theta_8,L2_G,Lm_G,"
          "diss_u_cum,diss_theta_cum,diss_theta_delta_cum,resid_theta,resid_u,besov_inf1_omega");
    // header + exactly one row for t_end = 0
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

    // a clearly-outside pair gets a "no" banner
    write_file(d / "cfg2.json", R"({"alpha": 0.5, "beta": 0.5, "n": 32, "t_end": 0.0})");
    CHECK(run_cmd("simulate " + (d / "cfg2.json").string(), d / "out.txt") == 0);
    CHECK(slurp(d / "out.txt").find("inside Theorem 1.1 region: no") != std::string::npos);
}

TEST_CASE("simulate: bad configs exit 1 without writing files") {
    TempDir d;
    fs::path csv = d / "diag.csv";

    write_file(d / "bad.json", "{ not json");
    CHECK(run_cmd("simulate " + (d / "bad.json").string(), d / "out.txt") == 1);
    CHECK_FALSE(fs::exists(csv));

    write_file(d / "unknown.json",
               R"({"alpha": 0.8, "beta": 0.3, "viscosity": 2, "out_csv": ")" + csv.string() + R"("})");
    CHECK(run_cmd("simulate " + (d / "unknown.json").string(), d / "out.txt") == 1);
    CHECK(slurp(d / "out.txt").find("unknown config key: viscosity") != std::string::npos);
    CHECK_FALSE(fs::exists(csv));

    write_file(d / "range.json", R"({"alpha": 3.0, "beta": 0.3})");
    CHECK(run_cmd("simulate " + (d / "range.json").string(), d / "out.txt") == 1);

    CHECK(run_cmd("simulate " + (d / "missing.json").string(), d / "out.txt") == 1);
}

TEST_CASE("simulate: exact-string alpha accepted") {
    TempDir d;
    write_file(d / "cfg.json", R"({"alpha": "4/5", "beta": "3/10", "n": 32, "t_end": 0.0})");
    CHECK(run_cmd("simulate " + (d / "cfg.json").string(), d / "out.txt") == 0);
    CHECK(slurp(d / "out.txt").find("inside Theorem 1.1 region: yes") != std::string::npos);
}

TEST_CASE("simulate: byte-identical determinism") {
    TempDir d;
    for (int i : {1, 2}) {
        std::string tag = std::to_string(i);
        write_file(d / ("cfg" + tag + ".json"),
                   R"({"alpha": 0.8, "beta": 0.3, "n": 32, "dt": 0.002, "t_end": 0.05,)"
                   R"( "ic": "random-bandlimited", "seed": 11,)"
                   R"( "out_csv": ")" + (d / ("diag" + tag + ".csv")).string() + R"(",)"
                   R"( "out_state": ")" + (d / ("state" + tag + ".dump")).string() + R"("})");
        CHECK(run_cmd("simulate " + (d / ("cfg" + tag + ".json")).string(), d / "out.txt") == 0);
    }
    CHECK(slurp(d / "diag1.csv") == slurp(d / "diag2.csv"));
    CHECK(slurp(d / "state1.dump") == slurp(d / "state2.dump"));
}

TEST_CASE("state dump round trip is bit exact") {
    TempDir d;
    write_file(d / "cfg.json",
               R"({"alpha": 0.8, "beta": 0.3, "n": 32, "dt": 0.002, "t_end": 0.02,)"
               R"( "out_state": ")" + (d / "state.dump").string() + R"("})");
    REQUIRE(run_cmd("simulate " + (d / "cfg.json").string(), d / "out.txt") == 0);
    std::string bytes = slurp(d / "state.dump");
    bsq::DecodedState dec = bsq::decode_dump(bytes);
    CHECK(dec.alpha == 0.8);
    CHECK(dec.beta == 0.3);
    CHECK(dec.state.omega.grid().n == 32);
    CHECK(bsq::encode_dump(dec.state, dec.alpha, dec.beta) == bytes);

    CHECK_THROWS_AS(bsq::decode_dump(bytes.substr(0, bytes.size() / 2)), std::runtime_error);
    CHECK_THROWS_AS(bsq::decode_dump("XXXXXXXX" + bytes.substr(8)), std::runtime_error);
}

TEST_CASE("shells command") {
    TempDir d;
    // hand-built dump: omega = single mode |xi| = 4 (shell 2), theta = 0
    bsq::Grid g(32);
    bsq::SimState st(g);
    st.omega.mode(4, 0) = bsq::Complex{0.5, 0.0};
    st.omega.mode(-4, 0) = bsq::Complex{0.5, 0.0};
    write_file(d / "one.dump", bsq::encode_dump(st, 0.8, 0.3));

    CHECK(run_cmd("shells " + (d / "one.dump").string() + " --field omega --out " +
                      (d / "sh.csv").string(),
                  d / "out.txt") == 0);
    std::string csv = slurp(d / "sh.csv");
    std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header == "j,L2,Linf,weight_2js");
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    int nonzero = 0;
    while (std::getline(is, line)) {
        auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
        int j = std::stoi(line.substr(0, c1));
        double l2 = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        if (l2 > 0) {
            ++nonzero;
            CHECK(j == 2);
        }
    }
    CHECK(nonzero == 1);

    // G differs from omega by the riesz part of theta; with theta = 0 they agree
    CHECK(run_cmd("shells " + (d / "one.dump").string() + " --field G --out " +
                      (d / "shG.csv").string(),
                  d / "out.txt") == 0);
    CHECK(slurp(d / "shG.csv") == csv);

    CHECK(run_cmd("shells " + (d / "nothere.dump").string(), d / "out.txt") == 1);
    CHECK(run_cmd("shells " + (d / "one.dump").string() + " --field pressure", d / "out.txt") == 1);
}

TEST_CASE("region command") {
    TempDir d;
    CHECK(run_cmd("region --alpha-min 0.70 --alpha-max 0.79 --alpha-step 0.01 --out " +
                      (d / "r.csv").string(),
                  d / "out.txt") == 0);
    std::string out = slurp(d / "out.txt");
    CHECK(out.find("estimated boundary alpha: 37/50") != std::string::npos);
    std::string csv = slurp(d / "r.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "alpha,beta,feasible,delta,m,delta_tilde,q,eta,s,p,r,rho");
    CHECK(csv.find("73/100,3673/14400,0") != std::string::npos);
    CHECK(csv.find("37/50,2859/10400,1") != std::string::npos);

    // empty grid
    CHECK(run_cmd("region --alpha-min 0.8 --alpha-max 0.7 --alpha-step 0.01", d / "out.txt") == 1);
    // bad step
    CHECK(run_cmd("region --alpha-min 0.7 --alpha-max 0.8 --alpha-step 0", d / "out.txt") == 1);

    // witness columns populated when requested
    CHECK(run_cmd("region --alpha-min 0.8 --alpha-max 0.8 --alpha-step 0.01 --witnesses --out " +
                      (d / "rw.csv").string(),
                  d / "out.txt") == 0);
    std::string rw = slurp(d / "rw.csv");
    std::string row = rw.substr(rw.find('\n') + 1);
    CHECK(std::count(row.begin(), row.end(), ',') == 11);
    CHECK(row.find(",,") == std::string::npos);
}

TEST_CASE("unknown subcommand exits nonzero") {
    TempDir d;
    CHECK(run_cmd("frobnicate", d / "out.txt") == 1);
    CHECK(run_cmd("", d / "out.txt") == 1);
}
