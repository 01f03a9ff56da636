#pragma once

// File formats: diagnostics CSV, the binary spectral state dump, witness
// JSON with exact numerator/denominator pairs, and region-sweep CSV.
// Output files are written to a temporary and renamed so a failed command
// never leaves a partial file.

#include "bsq/solver.hpp"
#include "bsq/witness.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bsq {

// Shortest round-trip decimal for a double; keeps CSV output bitwise
// reproducible across runs.
inline std::string fmt_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

// --- diagnostics CSV ----------------------------------------------------

inline std::string diagnostics_header(const std::vector<double>& lp_exponents) {
    std::string h = "step,t,L2_u,L2_theta,Linf_theta";
    for (double p : lp_exponents) h += ",Lp_theta_" + fmt_double(p);
    h += ",L2_G,Lm_G,diss_u_cum,diss_theta_cum,diss_theta_delta_cum,resid_theta,resid_u,besov_inf1_omega";
    return h;
}

inline std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows,
                                   const std::vector<double>& lp_exponents) {
    std::string out = diagnostics_header(lp_exponents) + "\n";
    for (const auto& r : rows) {
        out += std::to_string(r.step) + "," + fmt_double(r.t) + "," + fmt_double(r.l2_u) + "," +
               fmt_double(r.l2_theta) + "," + fmt_double(r.linf_theta);
        for (double v : r.lp_theta) out += "," + fmt_double(v);
        out += "," + fmt_double(r.l2_G) + "," + fmt_double(r.lm_G) + "," + fmt_double(r.diss_u_cum) +
               "," + fmt_double(r.diss_theta_cum) + "," + fmt_double(r.diss_theta_delta_cum) + "," +
               fmt_double(r.resid_theta) + "," + fmt_double(r.resid_u) + "," +
               fmt_double(r.besov_inf1_omega) + "\n";
    }
    return out;
}

// --- binary spectral dump ----------------------------------------------

// Layout (little-endian):
//   magic "BSQDUMP1" | u32 version=1 | u32 n | f64 alpha | f64 beta | f64 t
//   | u32 nfields | per field: 8-byte name | n*n records (i32 xi1, i32 xi2, f64 re, f64 im)
struct StateDump {
    int n = 0;
    double alpha = 0.0, beta = 0.0, t = 0.0;
    std::vector<std::pair<std::string, std::vector<std::tuple<int, int, double, double>>>> fields;
};

inline std::string encode_dump(const SimState& st, double alpha, double beta) {
    std::ostringstream os(std::ios::binary);
    auto put = [&os](const void* p, std::size_t k) { os.write(static_cast<const char*>(p), std::streamsize(k)); };
    os.write("BSQDUMP1", 8);
    std::uint32_t version = 1, n = std::uint32_t(st.omega.grid().n), nf = 2;
    put(&version, 4);
    put(&n, 4);
    put(&alpha, 8);
    put(&beta, 8);
    put(&st.t, 8);
    put(&nf, 4);
    auto put_field = [&](const char* name, const SpectralField& f) {
        char tag[8] = {};
        std::strncpy(tag, name, 8);
        put(tag, 8);
        const Grid& g = f.grid();
        for (int k1 = 0; k1 < g.n; ++k1)
            for (int k2 = 0; k2 < g.n; ++k2) {
                std::int32_t xi1 = g.wave(k1), xi2 = g.wave(k2);
                double re = f.at(k1, k2).real(), im = f.at(k1, k2).imag();
                put(&xi1, 4);
                put(&xi2, 4);
                put(&re, 8);
                put(&im, 8);
            }
    };
    put_field("omega", st.omega);
    put_field("theta", st.theta);
    return os.str();
}

struct DecodedState {
    SimState state;
    double alpha, beta;
};

inline DecodedState decode_dump(const std::string& bytes) {
    std::size_t pos = 0;
    auto get = [&](void* p, std::size_t k) {
        if (pos + k > bytes.size()) throw std::runtime_error("truncated dump");
        std::memcpy(p, bytes.data() + pos, k);
        pos += k;
    };
    char magic[8];
    get(magic, 8);
    if (std::memcmp(magic, "BSQDUMP1", 8) != 0) throw std::runtime_error("bad dump magic");
    std::uint32_t version, n, nf;
    double alpha, beta, t;
    get(&version, 4);
    if (version != 1) throw std::runtime_error("unsupported dump version");
    get(&n, 4);
    get(&alpha, 8);
    get(&beta, 8);
    get(&t, 8);
    get(&nf, 4);
    Grid g{static_cast<int>(n)};
    DecodedState out{SimState(g), alpha, beta};
    out.state.t = t;
    for (std::uint32_t fi = 0; fi < nf; ++fi) {
        char tag[9] = {};
        get(tag, 8);
        SpectralField f(g);
        for (std::uint32_t i = 0; i < n * n; ++i) {
            std::int32_t xi1, xi2;
            double re, im;
            get(&xi1, 4);
            get(&xi2, 4);
            get(&re, 8);
            get(&im, 8);
            f.mode(xi1, xi2) = Complex{re, im};
        }
        if (std::strcmp(tag, "omega") == 0) out.state.omega = std::move(f);
        else if (std::strcmp(tag, "theta") == 0) out.state.theta = std::move(f);
        else throw std::runtime_error(std::string("unknown field tag: ") + tag);
    }
    return out;
}

// --- witness JSON -------------------------------------------------------

inline nlohmann::ordered_json rat_json(const Rat& r) {
    return nlohmann::ordered_json::array({rat_num(r).str(), rat_den(r).str()});
}

inline nlohmann::ordered_json witness_json(const FeasibilityInput& in, const FeasibilityWitness& w) {
    nlohmann::ordered_json j;
    j["alpha"] = rat_json(in.alpha);
    j["beta"] = rat_json(in.beta);
    j["delta"] = rat_json(w.delta);
    j["m"] = rat_json(w.m);
    j["delta_tilde"] = rat_json(w.delta_tilde);
    j["q"] = rat_json(w.q);
    j["eta"] = rat_json(w.eta);
    j["s"] = rat_json(w.s);
    j["p"] = rat_json(w.p);
    j["r"] = rat_json(w.r);
    j["rho"] = rat_json(w.rho);
    nlohmann::ordered_json d;
    d["mu"] = rat_json(w.derived.mu);
    d["varsigma"] = rat_json(w.derived.varsigma);
    d["lambda"] = rat_json(w.derived.lambda);
    d["l"] = rat_json(w.derived.l);
    d["s1"] = rat_json(w.derived.s1);
    d["s2"] = rat_json(w.derived.s2);
    j["derived"] = d;
    return j;
}

inline Rat rat_from_json(const nlohmann::json& j) {
    return Rat(BigInt(j.at(0).get<std::string>()), BigInt(j.at(1).get<std::string>()));
}

inline std::pair<FeasibilityInput, FeasibilityWitness> witness_from_json(const nlohmann::json& j) {
    FeasibilityInput in{rat_from_json(j.at("alpha")), rat_from_json(j.at("beta"))};
    FeasibilityWitness w;
    w.delta = rat_from_json(j.at("delta"));
    w.m = rat_from_json(j.at("m"));
    w.delta_tilde = rat_from_json(j.at("delta_tilde"));
    w.q = rat_from_json(j.at("q"));
    w.eta = rat_from_json(j.at("eta"));
    w.s = rat_from_json(j.at("s"));
    w.p = rat_from_json(j.at("p"));
    w.r = rat_from_json(j.at("r"));
    w.rho = rat_from_json(j.at("rho"));
    return {in, w};
}

// --- region CSV ---------------------------------------------------------

inline std::string region_csv(const RegionMap& map) {
    std::string out = "alpha,beta,feasible,delta,m,delta_tilde,q,eta,s,p,r,rho\n";
    for (const auto& c : map.cells) {
        out += to_string(c.alpha) + "," + to_string(c.beta) + "," + (c.feasible ? "1" : "0");
        if (c.witness) {
            const auto& w = *c.witness;
            for (const Rat* r : {&w.delta, &w.m, &w.delta_tilde, &w.q, &w.eta, &w.s, &w.p, &w.r, &w.rho})
                out += "," + to_string(*r);
        } else {
            out += ",,,,,,,,,";
        }
        out += "\n";
    }
    return out;
}

// --- shell CSV ----------------------------------------------------------

inline std::string shells_csv(const ShellSpectrum& s, double smooth) {
    std::string out = "j,L2,Linf,weight_2js\n";
    for (int j = s.j_min; j <= s.j_max(); ++j) {
        out += std::to_string(j) + "," + fmt_double(s.l2_at(j)) + "," + fmt_double(s.linf_at(j)) +
               "," + fmt_double(std::pow(2.0, j * smooth)) + "\n";
    }
    return out;
}

} // namespace bsq
