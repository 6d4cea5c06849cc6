#include "quasirank/partition_lab.hpp"

#include "quasirank/parallel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quasirank::lab {

namespace {

void gen_partitions(long remaining, long max_part, std::vector<long>& acc,
                    const std::function<void(const std::vector<long>&)>& visit) {
    if (remaining == 0) {
        visit(acc);
        return;
    }
    for (long p = std::min(remaining, max_part); p >= 1; --p) {
        acc.push_back(p);
        gen_partitions(remaining - p, p, acc, visit);
        acc.pop_back();
    }
}

}  // namespace

void for_each_partition(long n, const std::function<void(const std::vector<long>&)>& visit) {
    if (n < 0) throw std::domain_error("for_each_partition: n must be >= 0");
    std::vector<long> acc;
    gen_partitions(n, n == 0 ? 1 : n, acc, visit);
}

Int partition_count(long n) {
    Int count = 0;
    for_each_partition(n, [&](const std::vector<long>&) { ++count; });
    return count;
}

long rank_of(const std::vector<long>& parts) {
    if (parts.empty()) throw std::domain_error("rank_of: empty partition has no rank");
    return parts.front() - static_cast<long>(parts.size());
}

long crank_of(const std::vector<long>& parts) {
    if (parts.empty()) throw std::domain_error("crank_of: empty partition has no crank");
    long ones = 0;
    for (long p : parts)
        if (p == 1) ++ones;
    if (ones == 0) return parts.front();
    long mu = 0;
    for (long p : parts)
        if (p > ones) ++mu;
    return mu - ones;
}

Int RankCrankTable::rank_count(long m, long n) const {
    if (n < 1 || n > n_max) throw std::out_of_range("rank_count: n out of table range");
    if (m < -n || m > n) return 0;
    return rank_rows[n][m + n];
}

Int RankCrankTable::crank_count(long m, long n) const {
    if (n < 1 || n > n_max) throw std::out_of_range("crank_count: n out of table range");
    if (m < -n || m > n) return 0;
    return crank_rows[n][m + n];
}

RankCrankTable build_rank_crank_table(long n_max) {
    RankCrankTable t;
    t.n_max = n_max;
    t.rank_rows.assign(n_max + 1, {});
    t.crank_rows.assign(n_max + 1, {});
    parallel_for(1, n_max + 1, [&](long long n) {
        std::vector<Int> rrow(2 * n + 1), crow(2 * n + 1);
        for_each_partition(static_cast<long>(n), [&](const std::vector<long>& parts) {
            ++rrow[rank_of(parts) + n];
            ++crow[crank_of(parts) + n];
        });
        t.rank_rows[n] = std::move(rrow);
        t.crank_rows[n] = std::move(crow);
    });
    // crank boundary convention at n = 1
    if (n_max >= 1) {
        t.crank_rows[1] = {Int(1), Int(-1), Int(1)};  // M(-1,1)=1, M(0,1)=-1, M(1,1)=1
    }
    return t;
}

// ---------------------------------------------------------------------------
// k-marked Durfee symbols

long MarkedDurfeeSymbol::size() const {
    long s = side * side;
    for (auto& [v, c] : top) s += v;
    for (auto& [v, c] : bottom) s += v;
    return s;
}

std::vector<long> MarkedDurfeeSymbol::rank_vector() const {
    std::vector<long> tau(marks + 1, 0), beta(marks + 1, 0);
    for (auto& [v, c] : top) ++tau[c];
    for (auto& [v, c] : bottom) ++beta[c];
    std::vector<long> rho(marks);
    for (long i = 1; i <= marks; ++i)
        rho[i - 1] = tau[i] - beta[i] - (i < marks ? 1 : 0);
    return rho;
}

long MarkedDurfeeSymbol::full_rank() const {
    auto rho = rank_vector();
    long fr = 0;
    for (long i = 1; i <= marks; ++i) fr += i * rho[i - 1];
    return fr;
}

bool MarkedDurfeeSymbol::valid(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (marks < 1 || side < 1) return fail("marks and side must be positive");
    auto check_row = [&](const std::vector<std::pair<long, long>>& row, const char* name) {
        long prev_v = side, prev_c = marks;
        for (auto& [v, c] : row) {
            if (v < 1 || v > side) return fail(std::string(name) + ": value out of [1, S]");
            if (c < 1 || c > marks) return fail(std::string(name) + ": bad color");
            if (v > prev_v) return fail(std::string(name) + ": values increase");
            if (c > prev_c) return fail(std::string(name) + ": subscripts increase");
            prev_v = v;
            prev_c = c;
        }
        return true;
    };
    if (!check_row(top, "top") || !check_row(bottom, "bottom")) return false;
    // colors 1..k-1 occur in the top row
    std::vector<char> seen(marks + 1, 0);
    std::vector<long> maxv(marks + 1, 0);
    for (auto& [v, c] : top) {
        seen[c] = 1;
        maxv[c] = std::max(maxv[c], v);
    }
    for (long c = 1; c < marks; ++c)
        if (!seen[c]) return fail("color " + std::to_string(c) + " missing from top row");
    // bottom-row parts of color i lie in [M_{i-1}, M_i], with M_0 = 1 and the
    // color-k interval ending at S
    for (auto& [v, c] : bottom) {
        long lo = (c == 1) ? 1 : maxv[c - 1];
        long hi = (c == marks) ? side : maxv[c];
        if (v < lo || v > hi) return fail("bottom part out of its color interval");
    }
    return true;
}

namespace {

struct DurfeeGen {
    long k = 1;
    long side = 1;
    const std::function<void(const MarkedDurfeeSymbol&)>* visit = nullptr;
    MarkedDurfeeSymbol sym;
    std::vector<long> maxv;  // M_c from the top row

    // Segment for color c in the top row: non-increasing values <= bound.
    // Colors run k, k-1, ..., 1 in row order; colors < k must be nonempty.
    void top_color(long c, long bound, long rem, bool segment_nonempty) {
        if (c == 0) {
            bottom_color(k, side, rem);
            return;
        }
        if (segment_nonempty || c == k) {
            // close this color's segment and move on
            long next_bound = sym.top.empty() ? side : sym.top.back().first;
            top_color(c - 1, next_bound, rem, false);
        }
        for (long v = std::min(bound, rem); v >= 1; --v) {
            sym.top.emplace_back(v, c);
            if (!segment_nonempty) maxv[c] = v;  // first (largest) part of this color
            top_color(c, v, rem - v, true);
            sym.top.pop_back();
        }
    }

    // Bottom segments: color c parts lie in [lo_c, hi_c] per rule (3);
    // cross-color monotonicity is automatic because the intervals are nested.
    void bottom_color(long c, long bound, long rem) {
        if (c == 0) {
            if (rem == 0) (*visit)(sym);
            return;
        }
        long lo = (c == 1) ? 1 : maxv[c - 1];
        long hi = (c == k) ? side : maxv[c];
        bottom_color(c - 1, side, rem);  // empty segment for color c
        for (long v = std::min({hi, bound, rem}); v >= lo; --v) {
            sym.bottom.emplace_back(v, c);
            bottom_color(c, v, rem - v);
            sym.bottom.pop_back();
        }
    }
};

}  // namespace

void for_each_marked_durfee(long k, long n,
                            const std::function<void(const MarkedDurfeeSymbol&)>& visit) {
    if (k < 1 || n < 1) throw std::domain_error("for_each_marked_durfee: k, n must be >= 1");
    for (long s = 1; s * s <= n; ++s) {
        DurfeeGen gen;
        gen.k = k;
        gen.side = s;
        gen.visit = &visit;
        gen.sym.marks = k;
        gen.sym.side = s;
        gen.maxv.assign(k + 1, 0);
        gen.top_color(k, s, n - s * s, false);
    }
}

Int count_marked_durfee(long k, long n) {
    Int count = 0;
    for_each_marked_durfee(k, n, [&](const MarkedDurfeeSymbol&) { ++count; });
    return count;
}

Int FullRankTable::count(long m, long n) const {
    if (n < 1 || n > n_max) throw std::out_of_range("FullRankTable::count: n out of range");
    auto it = rows[n].find(m);
    return it == rows[n].end() ? Int(0) : it->second;
}

Int FullRankTable::count_mod(long r, long t, long n) const {
    if (n < 1 || n > n_max) throw std::out_of_range("FullRankTable::count_mod: n out of range");
    Int acc = 0;
    for (auto& [m, cnt] : rows[n])
        if (pos_mod(m, t) == pos_mod(r, t)) acc += cnt;
    return acc;
}

Int FullRankTable::total(long n) const {
    if (n < 1 || n > n_max) throw std::out_of_range("FullRankTable::total: n out of range");
    Int acc = 0;
    for (auto& [m, cnt] : rows[n]) acc += cnt;
    return acc;
}

FullRankTable build_full_rank_table(long k, long n_max) {
    FullRankTable t;
    t.marks = k;
    t.n_max = n_max;
    t.rows.assign(n_max + 1, {});
    parallel_for(1, n_max + 1, [&](long long n) {
        std::map<long, Int> row;
        for_each_marked_durfee(k, static_cast<long>(n),
                               [&](const MarkedDurfeeSymbol& s) { ++row[s.full_rank()]; });
        t.rows[n] = std::move(row);
    });
    return t;
}

// ---------------------------------------------------------------------------
// moments

Int rank_moment(const RankCrankTable& t, long j, long n) {
    Int acc = 0;
    for (long m = -n; m <= n; ++m) {
        const Int& cnt = t.rank_rows[n][m + n];
        if (cnt != 0) acc += int_pow(Int(m), static_cast<unsigned long>(j)) * cnt;
    }
    return acc;
}

Int crank_moment(const RankCrankTable& t, long j, long n) {
    Int acc = 0;
    for (long m = -n; m <= n; ++m) {
        const Int& cnt = t.crank_rows[n][m + n];
        if (cnt != 0) acc += int_pow(Int(m), static_cast<unsigned long>(j)) * cnt;
    }
    return acc;
}

Int eta_moment(const RankCrankTable& t, long k, long n) {
    long d = (k - 1) / 2;
    Int acc = 0;
    for (long m = -n; m <= n; ++m) {
        const Int& cnt = t.rank_rows[n][m + n];
        if (cnt != 0) acc += binomial(Int(m + d), k) * cnt;
    }
    return acc;
}

CycIntRing::Elem twisted_rank_moment(const RankCrankTable& t, const CycIntRing& ring, long j,
                                     long a, long n) {
    auto acc = ring.zero();
    for (long m = -n; m <= n; ++m) {
        const Int& cnt = t.rank_rows[n][m + n];
        if (cnt == 0) continue;
        Int w = int_pow(Int(m), static_cast<unsigned long>(j)) * cnt;
        acc = ring.add(acc, ring.mul_base(ring.root_power(static_cast<long long>(a) * m), w));
    }
    return acc;
}

CycIntRing::Elem twisted_crank_moment(const RankCrankTable& t, const CycIntRing& ring, long j,
                                      long a, long n) {
    auto acc = ring.zero();
    for (long m = -n; m <= n; ++m) {
        const Int& cnt = t.crank_rows[n][m + n];
        if (cnt == 0) continue;
        Int w = int_pow(Int(m), static_cast<unsigned long>(j)) * cnt;
        acc = ring.add(acc, ring.mul_base(ring.root_power(static_cast<long long>(a) * m), w));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// exports

namespace {

std::string counts_csv(const char* stat, const std::vector<std::vector<Int>>& rows) {
    std::ostringstream os;
    os << "statistic,n,m,count\n";
    for (std::size_t n = 1; n < rows.size(); ++n) {
        long nn = static_cast<long>(n);
        for (long m = -nn; m <= nn; ++m) {
            const Int& c = rows[n][m + nn];
            if (c != 0) os << stat << ',' << nn << ',' << m << ',' << c << '\n';
        }
    }
    return os.str();
}

std::string counts_json(const char* stat, const std::vector<std::vector<Int>>& rows) {
    std::ostringstream os;
    os << "{\"statistic\":\"" << stat << "\",\"entries\":[";
    bool first = true;
    for (std::size_t n = 1; n < rows.size(); ++n) {
        long nn = static_cast<long>(n);
        for (long m = -nn; m <= nn; ++m) {
            const Int& c = rows[n][m + nn];
            if (c == 0) continue;
            if (!first) os << ',';
            first = false;
            os << "{\"n\":" << nn << ",\"m\":" << m << ",\"count\":" << c << "}";
        }
    }
    os << "]}";
    return os.str();
}

}  // namespace

std::string rank_table_csv(const RankCrankTable& t) { return counts_csv("N", t.rank_rows); }
std::string crank_table_csv(const RankCrankTable& t) { return counts_csv("M", t.crank_rows); }
std::string rank_table_json(const RankCrankTable& t) { return counts_json("N", t.rank_rows); }
std::string crank_table_json(const RankCrankTable& t) { return counts_json("M", t.crank_rows); }

std::string full_rank_table_csv(const FullRankTable& t) {
    std::ostringstream os;
    os << "statistic,n,m,count\n";
    for (long n = 1; n <= t.n_max; ++n)
        for (auto& [m, c] : t.rows[n])
            if (c != 0) os << "NF" << t.marks << ',' << n << ',' << m << ',' << c << '\n';
    return os.str();
}

std::string full_rank_table_json(const FullRankTable& t) {
    std::ostringstream os;
    os << "{\"statistic\":\"NF" << t.marks << "\",\"entries\":[";
    bool first = true;
    for (long n = 1; n <= t.n_max; ++n)
        for (auto& [m, c] : t.rows[n]) {
            if (c == 0) continue;
            if (!first) os << ',';
            first = false;
            os << "{\"n\":" << n << ",\"m\":" << m << ",\"count\":" << c << "}";
        }
    os << "]}";
    return os.str();
}

}  // namespace quasirank::lab
