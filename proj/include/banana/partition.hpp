#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace banana {

// Weakly decreasing positive parts; the empty list is the empty partition.
// Trailing zeros are never stored.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    Partition(std::initializer_list<int> p) : parts(p) { validate(); }
    explicit Partition(std::vector<int> p) : parts(std::move(p)) { validate(); }

    void validate() const {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] < 1) throw std::invalid_argument("partition part < 1");
            if (i + 1 < parts.size() && parts[i] < parts[i + 1])
                throw std::invalid_argument("partition not weakly decreasing");
        }
    }

    int size() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    int length() const { return static_cast<int>(parts.size()); }
    bool empty() const { return parts.empty(); }

    // part(i) with 1-based i; zero beyond the length
    int part(int i) const {
        if (i < 1) throw std::out_of_range("partition index");
        return i <= length() ? parts[i - 1] : 0;
    }

    long norm_sq() const {
        long s = 0;
        for (int p : parts) s += static_cast<long>(p) * p;
        return s;
    }

    // cell (r,c), 0-based: row r has columns 0..parts[r]-1
    bool has_cell(int r, int c) const {
        return r >= 0 && c >= 0 && r < length() && c < parts[r];
    }

    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator!=(const Partition& o) const { return !(*this == o); }
    bool operator<(const Partition& o) const { return parts < o.parts; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
};

inline Partition conjugate(const Partition& p) {
    std::vector<int> cols;
    if (!p.empty()) {
        cols.assign(p.parts[0], 0);
        for (int part : p.parts)
            for (int c = 0; c < part; ++c) ++cols[c];
    }
    return Partition(std::move(cols));
}

// mu fits inside lambda cellwise
inline bool contains(const Partition& lambda, const Partition& mu) {
    if (mu.length() > lambda.length()) return false;
    for (int i = 1; i <= mu.length(); ++i)
        if (mu.part(i) > lambda.part(i)) return false;
    return true;
}

namespace detail {
inline void gen_partitions(int n, int max_part, std::vector<int>& cur,
                           std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition(cur));
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of: n < 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::gen_partitions(n, n == 0 ? 1 : n, cur, out);
    return out;
}

// Cartesian product of partitions_of over the components, lexicographic in the
// component streams.
inline std::vector<std::vector<Partition>> partition_tuples(const std::vector<int>& a) {
    std::vector<std::vector<Partition>> lists;
    lists.reserve(a.size());
    for (int n : a) lists.push_back(partitions_of(n));
    std::vector<std::vector<Partition>> out;
    std::vector<Partition> cur(a.size());
    std::size_t total = 1;
    for (const auto& l : lists) total *= l.size();
    out.reserve(total);
    std::vector<std::size_t> idx(a.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < a.size(); ++i) cur[i] = lists[i][idx[i]];
        out.push_back(cur);
        std::size_t i = a.size();
        while (i > 0) {
            --i;
            if (++idx[i] < lists[i].size()) break;
            idx[i] = 0;
            if (i == 0) return out;
        }
        if (a.empty()) return out;
    }
}

namespace detail {
inline void gen_subpartitions(const Partition& shape, int row, int prev,
                              std::vector<int>& cur, std::vector<Partition>& out) {
    out.push_back(Partition(cur));
    if (row >= shape.length()) return;
    int hi = std::min(prev, shape.part(row + 1));
    for (int p = 1; p <= hi; ++p) {
        cur.push_back(p);
        gen_subpartitions(shape, row + 1, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

// All partitions contained in `shape` (including the empty one).
inline std::vector<Partition> subpartitions(const Partition& shape) {
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::gen_subpartitions(shape, 0, shape.length() ? shape.part(1) : 0, cur, out);
    return out;
}

}  // namespace banana
