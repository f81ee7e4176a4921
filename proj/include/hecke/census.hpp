#pragma once

// The census pipeline: enumerate primary odd primes with X/2 <= N(pi) <= X,
// compute central values and mollifiers, assemble the mollified moments
//
//   S1 = sum log N(pi) Phi(N(pi)/X) L(1/2, chi) M(pi),
//   S2 = sum log N(pi) Phi(N(pi)/X) L(1/2, chi)^2 M(pi)^2,
//
// count non-vanishing central values, and compare against the predicted main
// terms.  Counting convention: one primary generator per prime ideal.  The
// predictions' literature normalization counts all four unit multiples per
// ideal and replaces Phi-hat(1) by its limit 1/2, so the report carries the
// conversion factor Phi-hat(1)/2 alongside both normalizations.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lvalue.hpp"
#include "moments.hpp"
#include "sieve.hpp"
#include "threadpool.hpp"

namespace hecke {

struct RunConfig {
    double x = 10000.0;
    double theta = 0.174091266;
    double vartheta = 0.152944;  // (1/2)(1/2 - theta0) - 0.01
    std::string h_kind = "hstar";
    double delta = 0.05;
    double cutoff_multiplier = 4.0;
    unsigned threads = 1;
    std::string cache_path;
    std::string output_dir = ".";
    u64 rng_seed = 20260808;
    double nonvanishing_threshold = 1e-6;
    double s1_ratio_tolerance = 0.25;
    double s2_full_max_x = 10000.0;

    void validate() const {
        if (x < 100.0) throw std::domain_error("config: x >= 100 required");
        if (!(theta > 0.0 && theta < 0.5)) throw std::domain_error("config: theta in (0, 1/2)");
        if (!(theta + 2.0 * vartheta < 0.5))
            throw std::domain_error("config: theta + 2 vartheta < 1/2 required");
        if (h_kind != "hstar" && h_kind != "hstar_smoothed")
            throw std::domain_error("config: h_kind must be hstar or hstar_smoothed");
    }

    HShape::Kind shape_kind() const {
        return h_kind == "hstar" ? HShape::Kind::polynomial_hstar
                                 : HShape::Kind::smoothed_hstar;
    }

    static RunConfig from_file(const std::string& path);
};

// plain `key = value` lines; '#' comments
inline RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error("config:" + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "x") cfg.x = std::stod(val);
        else if (key == "theta") cfg.theta = std::stod(val);
        else if (key == "vartheta") cfg.vartheta = std::stod(val);
        else if (key == "h_kind") cfg.h_kind = val;
        else if (key == "delta") cfg.delta = std::stod(val);
        else if (key == "cutoff_multiplier") cfg.cutoff_multiplier = std::stod(val);
        else if (key == "threads") cfg.threads = unsigned(std::stoul(val));
        else if (key == "cache_path") cfg.cache_path = val;
        else if (key == "output_dir") cfg.output_dir = val;
        else if (key == "rng_seed") cfg.rng_seed = std::stoull(val);
        else if (key == "nonvanishing_threshold") cfg.nonvanishing_threshold = std::stod(val);
        else if (key == "s1_ratio_tolerance") cfg.s1_ratio_tolerance = std::stod(val);
        else if (key == "s2_full_max_x") cfg.s2_full_max_x = std::stod(val);
        else throw std::runtime_error("config: unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

struct CensusRow {
    CentralValueRecord rec;
    double mollifier = 0.0;
    double phi_weight = 0.0;
    int nonzero_flag = 0;
};

struct MomentReport {
    double x = 0.0;
    double theta = 0.0;
    double vartheta = 0.0;
    double delta = 0.0;

    double s1_emp = 0.0;
    double s1_pred = 0.0;  // census normalization: primary-per-ideal, exact Phi-hat
    double s2_emp = 0.0;
    double s2_upper = 0.0;  // same normalization
    double s1_pred_paper = 0.0;
    double s2_upper_paper = 0.0;
    double convention_factor = 0.0;  // Phi-hat(1)/2
    double phi_hat1 = 0.0;

    u64 nonvanishing_count = 0;
    u64 nonvanishing_count_loose = 0;   // threshold 1e-4
    u64 nonvanishing_count_strict = 0;  // threshold 1e-8
    double weighted_nonvanishing = 0.0;
    double cauchy_schwarz_lower = 0.0;
    u64 total_primes = 0;
    double proportion = 0.0;
    bool cauchy_schwarz_ok = false;
    std::string s2_method;  // "afe" or "l1_squared"

    double s1_ratio() const { return s1_emp / s1_pred; }
    double s2_ratio() const { return s2_emp / s2_upper; }
};

struct CensusResult {
    MomentReport report;
    std::vector<CensusRow> rows;
};

inline CensusResult run_census(const RunConfig& cfg) {
    cfg.validate();
    MollifierSpec spec(cfg.x, cfg.theta, cfg.vartheta, cfg.shape_kind());
    MollifierTerms terms(spec);
    const bool full_s2 = cfg.x <= cfg.s2_full_max_x;

    AfeConfig afe;
    afe.cutoff_multiplier = cfg.cutoff_multiplier;
    u64 limit = afe_cutoff(1, u64(cfg.x), afe);
    if (full_s2) limit = std::max(limit, afe_cutoff(2, u64(cfg.x), afe));
    auto sieve = std::make_shared<const NormSieve>(sieve_primes(std::max(limit, u64(cfg.x))));
    LValueEngine engine(sieve, afe);

    // census primes: X/2 <= N(pi) <= X, already sorted by norm
    std::vector<GaussInt> primes;
    for (const GaussInt& p : sieve->primes) {
        i128 np = norm(p);
        if (to_double(np) >= cfg.x / 2.0 && to_double(np) <= cfg.x) primes.push_back(p);
    }

    // cache lookups keyed by the generator
    std::map<GaussInt, CentralValueRecord, NormLess> cache;
    if (!cfg.cache_path.empty()) {
        for (auto& rec : load_lvalue_cache(cfg.cache_path)) {
            if (rec.cutoff_multiplier == cfg.cutoff_multiplier) cache[rec.prime] = rec;
        }
    }

    const SmoothCutoff phi(cfg.x);
    std::vector<CensusRow> rows(primes.size());
    std::vector<char> fresh(primes.size(), 0);
    parallel_for(primes.size(), cfg.threads, [&](std::size_t i) {
        const GaussInt& d = primes[i];
        CensusRow row;
        auto hit = cache.find(d);
        if (hit != cache.end()) {
            row.rec = hit->second;
        } else {
            row.rec.prime = d;
            row.rec.norm = u64(norm(d));
            row.rec.L1 = engine.central_value(d, 1);
            row.rec.L2 = full_s2 ? engine.central_value(d, 2) : row.rec.L1 * row.rec.L1;
            row.rec.cutoff_multiplier = cfg.cutoff_multiplier;
            fresh[i] = 1;
        }
        row.mollifier = mollifier_value(d, terms);
        row.phi_weight = phi(double(row.rec.norm) / cfg.x);
        row.nonzero_flag = std::abs(row.rec.L1) > cfg.nonvanishing_threshold ? 1 : 0;
        rows[i] = std::move(row);
    });

    if (!cfg.cache_path.empty()) {
        std::vector<CentralValueRecord> fresh_recs;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (fresh[i]) fresh_recs.push_back(rows[i].rec);
        if (!fresh_recs.empty()) append_lvalue_cache(cfg.cache_path, fresh_recs);
    }

    // fixed-order reduction
    Kahan s1, s2, wnv;
    u64 cnt = 0, cnt_loose = 0, cnt_strict = 0;
    for (const CensusRow& row : rows) {
        double w = std::log(double(row.rec.norm)) * row.phi_weight;
        s1.add(w * row.rec.L1 * row.mollifier);
        s2.add(w * row.rec.L2 * row.mollifier * row.mollifier);
        double a = std::abs(row.rec.L1);
        if (a > cfg.nonvanishing_threshold) {
            ++cnt;
            wnv.add(w);
        }
        if (a > 1e-4) ++cnt_loose;
        if (a > 1e-8) ++cnt_strict;
    }

    MomentReport rep;
    rep.x = cfg.x;
    rep.theta = cfg.theta;
    rep.vartheta = cfg.vartheta;
    rep.delta = cfg.delta;
    rep.s1_emp = s1.sum;
    rep.s2_emp = s2.sum;
    PredictedMoments paper = predicted_moments(spec, cfg.delta);
    rep.phi_hat1 = phi_hat(phi, 1.0);
    rep.convention_factor = rep.phi_hat1 / 2.0;
    rep.s1_pred_paper = paper.s1_main;
    rep.s2_upper_paper = paper.s2_upper;
    rep.s1_pred = paper.s1_main * rep.convention_factor;
    rep.s2_upper = paper.s2_upper * rep.convention_factor;
    rep.nonvanishing_count = cnt;
    rep.nonvanishing_count_loose = cnt_loose;
    rep.nonvanishing_count_strict = cnt_strict;
    rep.weighted_nonvanishing = wnv.sum;
    rep.cauchy_schwarz_lower = rep.s2_emp > 0.0 ? rep.s1_emp * rep.s1_emp / rep.s2_emp : 0.0;
    rep.total_primes = rows.size();
    rep.proportion = rows.empty() ? 0.0 : double(cnt) / double(rows.size());
    rep.cauchy_schwarz_ok =
        rep.weighted_nonvanishing >= rep.cauchy_schwarz_lower - 1e-9 * (1.0 + rep.cauchy_schwarz_lower);
    rep.s2_method = full_s2 ? "afe" : "l1_squared";
    return {rep, std::move(rows)};
}

// ---------------------------------------------------------------------------
// prediction comparison
// ---------------------------------------------------------------------------

struct ComparisonFlags {
    double s1_ratio = 0.0;
    double s2_ratio = 0.0;
    bool s1_within_tolerance = false;
    bool s2_bounded = false;
};

inline ComparisonFlags compare_predictions(const MomentReport& rep, const RunConfig& cfg) {
    ComparisonFlags f;
    f.s1_ratio = rep.s1_ratio();
    f.s2_ratio = rep.s2_ratio();
    f.s1_within_tolerance = std::abs(f.s1_ratio - 1.0) <= cfg.s1_ratio_tolerance;
    f.s2_bounded = f.s2_ratio <= 1.0;
    return f;
}

inline std::string comparison_table(const MomentReport& rep, const RunConfig& cfg) {
    ComparisonFlags f = compare_predictions(rep, cfg);
    std::ostringstream os;
    os.precision(6);
    os << "quantity        empirical        predicted        ratio    flag\n";
    os << "S1       " << std::scientific << rep.s1_emp << "   " << rep.s1_pred << "   "
       << std::fixed << f.s1_ratio << "   "
       << (f.s1_within_tolerance ? "ok" : "OUTSIDE-TOLERANCE") << "\n";
    os << "S2       " << std::scientific << rep.s2_emp << "   " << rep.s2_upper << "   "
       << std::fixed << f.s2_ratio << "   "
       << (f.s2_bounded ? "ok" : "ABOVE-UPPER-BOUND (investigate; bound is asymptotic)") << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// outputs
// ---------------------------------------------------------------------------

inline void emit_outputs(const CensusResult& res, const RunConfig& cfg) {
    namespace fs = std::filesystem;
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    {
        std::ofstream csv(dir / "census.csv");
        if (!csv) throw std::runtime_error("emit_outputs: cannot write census.csv in " + cfg.output_dir);
        csv.precision(17);
        csv << "prime_re,prime_im,norm,L1,L2,mollifier,phi_weight,nonzero_flag\n";
        for (const CensusRow& r : res.rows) {
            csv << to_string(r.rec.prime.re) << "," << to_string(r.rec.prime.im) << ","
                << r.rec.norm << "," << r.rec.L1 << "," << r.rec.L2 << "," << r.mollifier
                << "," << r.phi_weight << "," << r.nonzero_flag << "\n";
        }
    }
    {
        const MomentReport& m = res.report;
        std::ofstream rep(dir / "report.txt");
        if (!rep) throw std::runtime_error("emit_outputs: cannot write report.txt");
        rep.precision(17);
        rep << "# census moment report (primes counted one primary generator per ideal;\n"
               "# *_paper values use the all-associates normalization with Phi-hat -> 1/2)\n";
        rep << "code_version = " << kCodeVersion << "\n";
        rep << "x = " << m.x << "\n";
        rep << "theta = " << m.theta << "\n";
        rep << "vartheta = " << m.vartheta << "\n";
        rep << "delta = " << m.delta << "\n";
        rep << "s1_emp = " << m.s1_emp << "\n";
        rep << "s1_pred = " << m.s1_pred << "\n";
        rep << "s2_emp = " << m.s2_emp << "\n";
        rep << "s2_upper = " << m.s2_upper << "\n";
        rep << "s1_pred_paper = " << m.s1_pred_paper << "\n";
        rep << "s2_upper_paper = " << m.s2_upper_paper << "\n";
        rep << "convention_factor = " << m.convention_factor << "\n";
        rep << "phi_hat1 = " << m.phi_hat1 << "\n";
        rep << "s1_ratio = " << m.s1_ratio() << "\n";
        rep << "s2_ratio = " << m.s2_ratio() << "\n";
        rep << "s2_method = " << m.s2_method << "\n";
        rep << "nonvanishing_count = " << m.nonvanishing_count << "\n";
        rep << "nonvanishing_count_loose = " << m.nonvanishing_count_loose << "\n";
        rep << "nonvanishing_count_strict = " << m.nonvanishing_count_strict << "\n";
        rep << "weighted_nonvanishing = " << m.weighted_nonvanishing << "\n";
        rep << "cauchy_schwarz_lower = " << m.cauchy_schwarz_lower << "\n";
        rep << "cauchy_schwarz_ok = " << (m.cauchy_schwarz_ok ? 1 : 0) << "\n";
        rep << "total_primes = " << m.total_primes << "\n";
        rep << "proportion = " << m.proportion << "\n";
    }
    {
        std::ofstream tsv(dir / "plotdata_lvalues.tsv");
        tsv.precision(12);
        tsv << "norm\tL1\n";
        for (const CensusRow& r : res.rows) tsv << r.rec.norm << "\t" << r.rec.L1 << "\n";
    }
    {
        fs::path mom = dir / "plotdata_moments.tsv";
        bool fresh = !fs::exists(mom);
        std::ofstream tsv(mom, std::ios::app);
        tsv.precision(12);
        if (fresh) tsv << "x\ts1_ratio\ts2_ratio\tproportion\n";
        tsv << res.report.x << "\t" << res.report.s1_ratio() << "\t" << res.report.s2_ratio()
            << "\t" << res.report.proportion << "\n";
    }
}

inline std::vector<CensusRow> load_census_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_census_csv: cannot open " + path);
    std::vector<CensusRow> rows;
    std::string line;
    std::getline(in, line);  // header
    if (line != "prime_re,prime_im,norm,L1,L2,mollifier,phi_weight,nonzero_flag")
        throw std::runtime_error("load_census_csv: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        CensusRow r;
        auto next = [&]() {
            if (!std::getline(ss, tok, ',')) throw std::runtime_error("load_census_csv: short row");
            return tok;
        };
        r.rec.prime.re = parse_i128(next());
        r.rec.prime.im = parse_i128(next());
        r.rec.norm = std::stoull(next());
        r.rec.L1 = std::stod(next());
        r.rec.L2 = std::stod(next());
        r.mollifier = std::stod(next());
        r.phi_weight = std::stod(next());
        r.nonzero_flag = std::stoi(next());
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace hecke
