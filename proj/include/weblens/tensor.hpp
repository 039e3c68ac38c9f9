#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "weblens/error.hpp"

namespace weblens {

struct TensorEntry {
    std::size_t i = 0;  // mode-1 index (AS axis in update tensors)
    std::size_t j = 0;  // mode-2 index (time bin)
    std::size_t k = 0;  // mode-3 index (vantage point)
    double value = 0.0;
};

// Coordinate-format 3-way tensor. Entries are kept sorted by (i,j,k),
// coalesced, and free of explicit zeros.
class SparseTensor3 {
public:
    SparseTensor3() = default;

    // Duplicate coordinates are summed; entries that sum to zero are dropped.
    static SparseTensor3 from_entries(std::array<std::size_t, 3> shape,
                                      std::vector<TensorEntry> entries) {
        for (const auto& e : entries) {
            if (e.i >= shape[0] || e.j >= shape[1] || e.k >= shape[2])
                throw ConfigError("tensor entry index out of shape");
            if (!std::isfinite(e.value))
                throw DataError("tensor entry is not finite");
        }
        std::stable_sort(entries.begin(), entries.end(),
                         [](const TensorEntry& a, const TensorEntry& b) {
                             if (a.i != b.i) return a.i < b.i;
                             if (a.j != b.j) return a.j < b.j;
                             return a.k < b.k;
                         });
        SparseTensor3 t;
        t.shape_ = shape;
        for (std::size_t e = 0; e < entries.size();) {
            std::size_t f = e;
            double v = 0.0;
            while (f < entries.size() && entries[f].i == entries[e].i &&
                   entries[f].j == entries[e].j && entries[f].k == entries[e].k)
                v += entries[f++].value;
            if (v != 0.0)
                t.entries_.push_back({entries[e].i, entries[e].j, entries[e].k, v});
            e = f;
        }
        return t;
    }

    const std::array<std::size_t, 3>& shape() const { return shape_; }
    const std::vector<TensorEntry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    double norm() const {
        double s = 0.0;
        for (const auto& e : entries_) s += e.value * e.value;
        return std::sqrt(s);
    }

    double sum() const {
        double s = 0.0;
        for (const auto& e : entries_) s += e.value;
        return s;
    }

private:
    std::array<std::size_t, 3> shape_{0, 0, 0};
    std::vector<TensorEntry> entries_;
};

// sqrt of the sum of squared elementwise differences over the sparse merge.
inline double frobenius_distance(const SparseTensor3& x,
                                 const SparseTensor3& y) {
    if (x.shape() != y.shape())
        throw ConfigError("frobenius_distance: shape mismatch");
    const auto& a = x.entries();
    const auto& b = y.entries();
    auto key = [](const TensorEntry& e) {
        return std::array<std::size_t, 3>{e.i, e.j, e.k};
    };
    double s = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
        double d;
        if (ib == b.size() || (ia < a.size() && key(a[ia]) < key(b[ib]))) {
            d = a[ia++].value;
        } else if (ia == a.size() || key(b[ib]) < key(a[ia])) {
            d = -b[ib++].value;
        } else {
            d = a[ia++].value - b[ib++].value;
        }
        s += d * d;
    }
    return std::sqrt(s);
}

namespace detail {
// Integer-valued entries round-trip bit-faithfully through decimal text.
inline std::string format_tensor_value(double v) {
    if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
        return std::to_string(std::int64_t(v));
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace detail

// Text interchange: header line "m T o", then one "i j k value" line per
// stored entry in canonical order.
inline void write_tensor(std::ostream& os, const SparseTensor3& t) {
    os << t.shape()[0] << ' ' << t.shape()[1] << ' ' << t.shape()[2] << '\n';
    for (const auto& e : t.entries())
        os << e.i << ' ' << e.j << ' ' << e.k << ' '
           << detail::format_tensor_value(e.value) << '\n';
}

inline SparseTensor3 read_tensor(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw DataError("tensor text: missing header line");
    std::array<std::size_t, 3> shape{};
    {
        std::istringstream hs(line);
        if (!(hs >> shape[0] >> shape[1] >> shape[2]))
            throw DataError("tensor text: malformed header line");
    }
    std::vector<TensorEntry> entries;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        TensorEntry e;
        if (!(ls >> e.i >> e.j >> e.k >> e.value))
            throw DataError("tensor text: malformed entry at line " +
                            std::to_string(lineno));
        entries.push_back(e);
    }
    return SparseTensor3::from_entries(shape, std::move(entries));
}

}  // namespace weblens
