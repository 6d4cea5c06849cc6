// Verification of the explicit congruences, the l-adic pipeline (the three
// parts of the congruence theorem), dissection checks against enumeration,
// the exact root-of-unity identities, and a heuristic congruence scanner.
#pragma once

#include "quasirank/cyclotomic.hpp"
#include "quasirank/moment_engine.hpp"
#include "quasirank/partition_lab.hpp"
#include "quasirank/qseries.hpp"
#include "quasirank/quasimodular.hpp"
#include "quasirank/rank_lambert.hpp"

#include <string>
#include <vector>

namespace quasirank::conglab {

using quasirank::Int;

// ---------------------------------------------------------------------------
// l-adic constants

struct EllData {
    long ell = 5;
    long beta = 0;        // 1 <= beta <= l-1, 24 beta = 1 (mod l)
    long r = 0;           // (24 beta - 1)/l
    long lambda = 0;      // (l^2 + 24 beta - 1)/(24 l)
    std::uint64_t alpha = 0;  // in Z/l^2, alpha = l B_{l-1}/(l-1) (mod l^2)
};

EllData ell_data(long ell);

// ---------------------------------------------------------------------------
// reports

struct CongruenceReport {
    std::string statistic;
    long long A = 0, B = 0;
    long long modulus = 0;
    long long n_checked = -1;  // verified for 0 <= n <= n_checked
    bool verified = false;
    long long counter_n = -1;
    std::string counter_value;

    std::string to_json() const;
};

// check coefficient(A n + B) = 0 in the ring for 0 <= n <= N (ring encodes the
// modulus; an Integer-ring series is checked for divisibility by `modulus`)
CongruenceReport verify_congruence(const QSeries<ResidueRing>& stat, const std::string& name,
                                   long long A, long long B, long long N);
CongruenceReport verify_congruence_int(const QSeries<IntegerRing>& stat, const std::string& name,
                                       long long A, long long B, long long modulus, long long N);

// eta_k stat series mod m via the Lambert path, valid through q^T
QSeries<ResidueRing> eta_stat_series_mod(long k, long long modulus, long long T);

// ---------------------------------------------------------------------------
// the l = 11 moment table (parts 1 and 2 of the congruence theorem at l = 11):
// N_2, N_4, N_6, N_8 on 11n+6 against the eta^13(24z)-aligned streams
struct MomentTableReport {
    long k = 0;  // moment order 2k
    bool verified = false;
    long long n_checked = -1;
    long long counter_n = -1;
    std::string detail;
};
MomentTableReport theorem3_part12(long k, long long N);

// empirical c_k of part (2): leading-coefficient ratio of the N_{2k} and N_2
// streams mod l, with the depth to which N_{2k} = c_k N_2 + eta^{r} * (fit)
// was verified
struct CkReport {
    long k = 0;
    std::uint64_t c = 0;
    bool fit_ok = false;
    long fit_weight = 0;
    long long depth = 0;
};
CkReport solve_ck(long k, long long N);

// ---------------------------------------------------------------------------
// part (3) pipeline over Z/l^2
struct Theorem3Part3Report {
    long ell = 0;
    long w1 = 0, w2 = 0;       // stated weights of H1, H2
    long long q_index = 0;     // checked through this q exponent
    bool h1_valuation_ok = false;  // f_l = c q^{lambda} + ...
    bool h_congruent = false;      // H1 = H2 (mod l)
    bool h1_fit_ok = false;        // H1 in span{E4^b E6^c : 4b+6c = w1} over Z/l^2
    bool h2_fit_ok = false;
    bool eta_quotient_ok = false;  // 1/eta(24z) = Delta^{(l^2-1)/24}(24z)/eta^l(24 l z) (mod l^2)
    bool all_ok() const {
        return h1_valuation_ok && h_congruent && h1_fit_ok && h2_fit_ok && eta_quotient_ok;
    }
};
Theorem3Part3Report theorem3_part3(long ell, long long n_progressions);

// ---------------------------------------------------------------------------
// dissection of the full rank via root-of-unity evaluations
struct DissectionReport {
    long k = 0, t = 0;
    long long n_max = 0;
    bool all_match = false;       // formula = enumeration for every (r, n)
    bool totals_match = false;    // sum_r NF_k(r,t;n) = D_k(n)
    bool rational_ok = false;     // every dissected coefficient is rational
    std::string detail;
};
DissectionReport dissection_check(long k, long t, long long n_max);

// ---------------------------------------------------------------------------
// the exact root-of-unity identity
struct RootIdentityResult {
    long t = 0, r = 0, s = 0, d = 0;
    bool hypothesis_ok = false;  // the r,s congruence conditions for all 0 <= u <= d-1
    int legendre_1_24d = 0;      // (1-24d | t), recorded alongside
    bool zero3 = false;          // the cleared-denominator sum vanishes in Z[zeta_{2t}]
    bool zero2 = false;          // the fraction form vanishes in Q(zeta_{2t})
    bool agree = false;          // zero2 == zero3
};
RootIdentityResult root_identity_check(long t, long r, long s, long d);
// exhaustive table over all (r,s,d), one JSON object per line
std::string root_identity_table_jsonl(long t);

// ---------------------------------------------------------------------------
// heuristic congruence scanner: a pass is evidence, never proof
struct ScanHit {
    long long A = 0, B = 0;
    long long points = 0;  // progression points checked
};
std::vector<ScanHit> scan_congruences(const QSeries<ResidueRing>& stat,
                                      const std::vector<long long>& A_candidates,
                                      long long min_points = 3);

}  // namespace quasirank::conglab
