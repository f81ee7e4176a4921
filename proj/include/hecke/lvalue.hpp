#pragma once

// Central values L(1/2, chi_{(1+i)^5 d})^j by the approximate functional
// equation:
//
//   L(1/2, chi)^j = 2 sum_{n primary} chi_{(1+i)^5 d}(n) d_{[i],j}(n)
//                     N(n)^{-1/2} V_j(N(n) / N(d)^{j/2}),
//
// truncated where V_j is negligible.  The truncation point is
// max(multiplier * log^2(2+N(d)), floor_j) * N(d)^{j/2}; the floors keep the
// tail below 1e-9 for small conductors, where the log^2 rule alone is too
// short for the j = 2 kernel's exp(-c sqrt(xi)) decay.
//
// chi values at primes are computed through the residue field: for split q
// (norm p) the symbol (n/q) is the Legendre symbol of the image of n in F_p,
// for inert q (norm r^2) it is the Legendre symbol of N(n) mod r.  This path
// is validated against chi_eval by tests.

#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "symbols.hpp"
#include "weights.hpp"

namespace hecke {

inline constexpr const char* kCodeVersion = "hecke-1.0.0";

struct AfeConfig {
    double cutoff_multiplier = 4.0;
    double xi_floor_1 = 60.0;
    double xi_floor_2 = 640.0;
};

inline u64 afe_cutoff(int j, u64 nd, const AfeConfig& cfg, double mult_override = 0.0) {
    double mult = mult_override > 0.0 ? mult_override : cfg.cutoff_multiplier;
    double lg = std::log(2.0 + double(nd));
    double xi = std::max(mult * lg * lg, j == 1 ? cfg.xi_floor_1 : cfg.xi_floor_2);
    double t = xi * std::pow(double(nd), 0.5 * j);
    if (t > 9e17) throw std::domain_error("afe_cutoff: conductor too large");
    return u64(t);
}

// chi_{(1+i)^5 d}(n) for primary n and squarefree primary d, after one
// reciprocity flip per prime factor of d
class SquarefreeCharacter {
  public:
    SquarefreeCharacter(const GaussInt& d, const CharTable& tab) : d_(d), tab_(&tab) {
        FactoredElement fe = factor(d);
        if (!is_squarefree(fe) || !is_primary_fast(d) || !is_odd(d))
            throw std::domain_error("SquarefreeCharacter: d must be odd, primary, squarefree");
        for (const auto& [q, e] : fe.factors) {
            (void)e;
            parts_.emplace_back(q);
        }
    }

    // n must be primary (the AFE sums over primary n only)
    int operator()(const GaussInt& n) const {
        int acc = tab_->onepi_symbol(n);  // ((1+i)/n), fifth power is itself
        for (const PrimeFieldSymbol& part : parts_) {
            int s = part(n);
            if (s == 0) return 0;
            acc *= s;
        }
        return acc;
    }

    const GaussInt& conductor_odd_part() const { return d_; }

  private:
    GaussInt d_;
    const CharTable* tab_;
    std::vector<PrimeFieldSymbol> parts_;
};

// ---------------------------------------------------------------------------
// AFE engine
// ---------------------------------------------------------------------------

class LValueEngine {
  public:
    LValueEngine(std::shared_ptr<const NormSieve> sieve, AfeConfig cfg = {})
        : sieve_(std::move(sieve)), cfg_(cfg) {
        norms_.reserve(sieve_->primes.size());
        for (const GaussInt& p : sieve_->primes) norms_.push_back(u64(norm(p)));
    }

    const AfeConfig& config() const { return cfg_; }
    const NormSieve& sieve() const { return *sieve_; }

    // L(1/2, chi_{(1+i)^5 d})^j for odd squarefree primary d
    double central_value(const GaussInt& d, int j, double mult_override = 0.0) const {
        if (j != 1 && j != 2) throw std::domain_error("central_value: j must be 1 or 2");
        if (!is_odd(d) || !is_primary_fast(d))
            throw std::domain_error("central_value: d must be odd and primary");
        u64 nd = u64(norm(d));
        u64 cutoff = afe_cutoff(j, nd, cfg_, mult_override);
        if (cutoff > sieve_->limit)
            throw std::domain_error("central_value: sieve limit below AFE cutoff");

        SquarefreeCharacter chi(d, char_tables());
        std::size_t nprimes = std::size_t(
            std::upper_bound(norms_.begin(), norms_.end(), cutoff) - norms_.begin());
        std::vector<int8_t> chip(nprimes);
        for (std::size_t i = 0; i < nprimes; ++i) chip[i] = int8_t(chi(sieve_->primes[i]));

        const double nd_pow = std::pow(double(nd), 0.5 * j);
        Kahan acc;
        // n = 1 term
        acc.add(v_weight(j, 1.0 / nd_pow));
        dfs(0, 1, 1, 1.0, cutoff, j, nd_pow, chip, nprimes, acc);
        return 2.0 * acc.sum;
    }

  private:
    void dfs(std::size_t start, u64 n_norm, int chi_n, double dj, u64 cutoff, int j,
             double nd_pow, const std::vector<int8_t>& chip, std::size_t nprimes,
             Kahan& acc) const {
        for (std::size_t i = start; i < nprimes; ++i) {
            u64 pn = norms_[i];
            if (n_norm > cutoff / pn) break;  // norms sorted: no later prime fits
            if (chip[i] == 0) continue;
            u64 m = n_norm;
            int chi_m = chi_n;
            int e = 0;
            while (m <= cutoff / pn) {
                m *= pn;
                chi_m *= chip[i];
                ++e;
                double djm = (j == 1) ? 1.0 : dj * double(e + 1);
                double xi = double(m) / nd_pow;
                double term = double(chi_m) * djm / std::sqrt(double(m)) * v_weight(j, xi);
                acc.add(term);
                dfs(i + 1, m, chi_m, djm, cutoff, j, nd_pow, chip, nprimes, acc);
            }
        }
    }

    std::shared_ptr<const NormSieve> sieve_;
    AfeConfig cfg_;
    std::vector<u64> norms_;
};

// ---------------------------------------------------------------------------
// central-value records and the append-only cache
// ---------------------------------------------------------------------------

struct CentralValueRecord {
    GaussInt prime;
    u64 norm = 0;
    double L1 = 0.0;
    double L2 = 0.0;
    double cutoff_multiplier = 0.0;
    std::string code_version = kCodeVersion;
};

inline void validate_record(const CentralValueRecord& r) {
    if (r.L2 < -1e-6) throw std::runtime_error("central-value record: negative L2");
    double tol = 1e-4 * (1.0 + r.L1 * r.L1);
    if (std::abs(r.L2 - r.L1 * r.L1) > tol)
        throw std::runtime_error("central-value record: L2 inconsistent with L1^2");
}

inline std::vector<CentralValueRecord> load_lvalue_cache(const std::string& path) {
    std::vector<CentralValueRecord> out;
    std::ifstream in(path);
    if (!in) return out;  // absent cache is an empty cache
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        CentralValueRecord r;
        std::size_t pos = 0;
        auto next = [&]() {
            std::size_t c = line.find(',', pos);
            std::string tok = line.substr(pos, c == std::string::npos ? c : c - pos);
            pos = (c == std::string::npos) ? line.size() : c + 1;
            return tok;
        };
        r.prime.re = parse_i128(next());
        r.prime.im = parse_i128(next());
        r.norm = std::stoull(next());
        r.L1 = std::stod(next());
        r.L2 = std::stod(next());
        r.cutoff_multiplier = std::stod(next());
        r.code_version = next();
        if (r.code_version != kCodeVersion)
            throw std::runtime_error("lvalue cache: version mismatch (" + r.code_version +
                                     " vs " + kCodeVersion + ")");
        if (u64(norm(r.prime)) != r.norm)
            throw std::runtime_error("lvalue cache: norm mismatch on " + to_string(r.prime));
        validate_record(r);
        out.push_back(std::move(r));
    }
    return out;
}

inline void append_lvalue_cache(const std::string& path,
                                const std::vector<CentralValueRecord>& recs) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("lvalue cache: cannot open " + path);
    out.precision(17);
    for (const auto& r : recs) {
        out << to_string(r.prime.re) << "," << to_string(r.prime.im) << "," << r.norm << ","
            << r.L1 << "," << r.L2 << "," << r.cutoff_multiplier << "," << r.code_version
            << "\n";
    }
}

}  // namespace hecke
