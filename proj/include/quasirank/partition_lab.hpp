// Brute-force combinatorial oracles: partitions, ranks, cranks, k-marked
// Durfee symbols, full ranks, and the moment statistics, all by direct
// enumeration. Every generating-function claim elsewhere is tested against
// this module, so nothing here may take a generating-function shortcut.
#pragma once

#include "quasirank/cyclotomic.hpp"
#include "quasirank/ints.hpp"
#include "quasirank/rings.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace quasirank::lab {

// ---------------------------------------------------------------------------
// partitions

// visit every partition of n (non-increasing part lists), each exactly once
void for_each_partition(long n, const std::function<void(const std::vector<long>&)>& visit);

Int partition_count(long n);  // p(n) by enumeration (small n only)

long rank_of(const std::vector<long>& parts);   // largest part minus number of parts
long crank_of(const std::vector<long>& parts);  // Andrews-Garvan crank

// ---------------------------------------------------------------------------
// rank / crank count tables

// N(m,n) and M(m,n) for 1 <= n <= n_max; rows are dense over m in [-n, n].
// M(m,1) uses the boundary convention M(0,1) = -1, M(+-1,1) = 1.
struct RankCrankTable {
    long n_max = 0;
    std::vector<std::vector<Int>> rank_rows;   // rank_rows[n][m + n]
    std::vector<std::vector<Int>> crank_rows;  // crank_rows[n][m + n]

    Int rank_count(long m, long n) const;
    Int crank_count(long m, long n) const;
};

RankCrankTable build_rank_crank_table(long n_max);

// ---------------------------------------------------------------------------
// k-marked Durfee symbols

struct MarkedDurfeeSymbol {
    long marks = 1;  // k
    long side = 1;   // Durfee side S
    std::vector<std::pair<long, long>> top;     // (value, color), row order
    std::vector<std::pair<long, long>> bottom;  // (value, color), row order

    long size() const;
    std::vector<long> rank_vector() const;  // rho_1 .. rho_k
    long full_rank() const;                 // FR = sum i * rho_i
    // Andrews admissibility: value/subscript monotonicity, color presence,
    // bottom-row ranges against the top-row maxima.
    bool valid(std::string* why = nullptr) const;
};

void for_each_marked_durfee(long k, long n,
                            const std::function<void(const MarkedDurfeeSymbol&)>& visit);

Int count_marked_durfee(long k, long n);  // D_k(n)

// NF_k(m,n) for 1 <= n <= n_max
struct FullRankTable {
    long marks = 1;
    long n_max = 0;
    std::vector<std::map<long, Int>> rows;  // rows[n][m]

    Int count(long m, long n) const;                 // NF_k(m,n)
    Int count_mod(long r, long t, long n) const;     // NF_k(r,t;n)
    Int total(long n) const;                         // D_k(n)
};

FullRankTable build_full_rank_table(long k, long n_max);

// ---------------------------------------------------------------------------
// moment statistics (exact, from the enumeration tables)

Int rank_moment(const RankCrankTable& t, long j, long n);   // N_j(n)
Int crank_moment(const RankCrankTable& t, long j, long n);  // M_j(n)
// symmetrized moment eta_k(n) = sum_m C(m + floor((k-1)/2), k) N(m,n)
Int eta_moment(const RankCrankTable& t, long k, long n);

// twisted moments R_j(a/c;n) = sum_k k^j zeta_c^{ak} N(k,n) (and the crank
// analogue), exact in Z[zeta_c]
using CycIntRing = CyclotomicRing<IntegerRing>;
CycIntRing::Elem twisted_rank_moment(const RankCrankTable& t, const CycIntRing& ring, long j,
                                     long a, long n);
CycIntRing::Elem twisted_crank_moment(const RankCrankTable& t, const CycIntRing& ring, long j,
                                      long a, long n);

// ---------------------------------------------------------------------------
// exports (stable formats for golden tests)

// CSV with header "statistic,n,m,count"
std::string rank_table_csv(const RankCrankTable& t);
std::string crank_table_csv(const RankCrankTable& t);
std::string full_rank_table_csv(const FullRankTable& t);
std::string rank_table_json(const RankCrankTable& t);
std::string crank_table_json(const RankCrankTable& t);
std::string full_rank_table_json(const FullRankTable& t);

}  // namespace quasirank::lab
