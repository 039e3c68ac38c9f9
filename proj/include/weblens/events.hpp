#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "weblens/cp_als.hpp"
#include "weblens/error.hpp"
#include "weblens/tensor.hpp"

namespace weblens {

// One pre-extracted BGP update: a prefix announcement or withdrawal seen by
// a vantage point, already mapped to its origin AS.
struct UpdateRecord {
    double timestamp = 0.0;  // seconds since epoch
    std::string prefix;
    std::string origin_as;
    std::string vp;
};

struct ObservationWindow {
    double start = 0.0;
    double bin_seconds = 0.0;
    std::size_t bins = 0;
};

// Axis labels for an assembled update tensor: position in as_ids/vp_ids is
// the tensor index along that mode.
struct TensorIndexMaps {
    std::vector<std::string> as_ids;
    std::vector<std::string> vp_ids;
    ObservationWindow window;
};

// One detected disruption: the participating AS, active time bins, and
// observing vantage points of a dominant rank-one component.
struct Event {
    std::set<std::string> as_set;
    std::set<std::size_t> time_bins;
    std::set<std::string> vp_set;
    double weight = 0.0;
    std::size_t component_index = 0;
};

struct EventThresholds {
    double as_fraction = 0.5;
    double time_fraction = 0.5;
    double vp_fraction = 0.5;
};

// Counts retained records per (AS, time bin, VP). Records outside the
// half-open window [start, start + bins*bin_seconds) are dropped, as are
// records at vantage points excluded by the filter. AS and VP axes hold
// exactly the identifiers with at least one retained record, sorted, so the
// result is independent of input order.
inline std::pair<SparseTensor3, TensorIndexMaps> assemble_update_tensor(
    std::span<const UpdateRecord> updates, double start, double bin_seconds,
    std::size_t bins,
    const std::optional<std::set<std::string>>& vp_filter = std::nullopt) {
    if (!(bin_seconds > 0.0))
        throw ConfigError("assemble_update_tensor: bin width must be positive");
    if (bins < 1)
        throw ConfigError("assemble_update_tensor: need at least one bin");

    const double end = start + double(bins) * bin_seconds;
    struct Retained {
        std::size_t bin;
        const UpdateRecord* rec;
    };
    std::vector<Retained> retained;
    std::set<std::string> as_seen, vp_seen;
    for (const auto& rec : updates) {
        if (!(rec.timestamp >= start && rec.timestamp < end)) continue;
        if (vp_filter && !vp_filter->contains(rec.vp)) continue;
        auto bin = std::size_t(std::floor((rec.timestamp - start) / bin_seconds));
        if (bin >= bins) bin = bins - 1;  // guard the floating-point edge
        retained.push_back({bin, &rec});
        as_seen.insert(rec.origin_as);
        vp_seen.insert(rec.vp);
    }
    if (retained.empty())
        throw DataError("assemble_update_tensor: zero retained records");

    TensorIndexMaps maps;
    maps.as_ids.assign(as_seen.begin(), as_seen.end());
    maps.vp_ids.assign(vp_seen.begin(), vp_seen.end());
    maps.window = {start, bin_seconds, bins};
    std::map<std::string, std::size_t> as_index, vp_index;
    for (std::size_t i = 0; i < maps.as_ids.size(); ++i)
        as_index[maps.as_ids[i]] = i;
    for (std::size_t k = 0; k < maps.vp_ids.size(); ++k)
        vp_index[maps.vp_ids[k]] = k;

    std::vector<TensorEntry> entries;
    entries.reserve(retained.size());
    for (const auto& r : retained)
        entries.push_back({as_index[r.rec->origin_as], r.bin,
                           vp_index[r.rec->vp], 1.0});
    auto tensor = SparseTensor3::from_entries(
        {maps.as_ids.size(), bins, maps.vp_ids.size()}, std::move(entries));
    return {std::move(tensor), std::move(maps)};
}

namespace detail {
inline std::set<std::size_t> participating_indices(const Eigen::VectorXd& col,
                                                   double fraction) {
    const double cutoff = fraction * col.cwiseAbs().maxCoeff();
    std::set<std::size_t> out;
    for (long i = 0; i < col.rows(); ++i)
        if (std::abs(col(i)) >= cutoff) out.insert(std::size_t(i));
    return out;
}
}  // namespace detail

// Reads the top-K components off a decomposition: an axis element
// participates in an event when its factor magnitude reaches the given
// fraction of the column maximum.
inline std::vector<Event> extract_events(const CpModel& model,
                                         const TensorIndexMaps& maps,
                                         std::size_t top_k,
                                         const EventThresholds& thresholds = {}) {
    if (top_k > model.rank)
        throw ConfigError("extract_events: more components requested than rank");
    for (double f : {thresholds.as_fraction, thresholds.time_fraction,
                     thresholds.vp_fraction})
        if (!(f > 0.0 && f <= 1.0))
            throw ConfigError("extract_events: fractions must be in (0,1]");

    std::vector<Event> events;
    for (std::size_t r = 0; r < top_k; ++r) {
        Event ev;
        ev.component_index = r;
        ev.weight = model.weights[r];
        for (std::size_t i : detail::participating_indices(
                 model.as_factors.col(long(r)), thresholds.as_fraction))
            ev.as_set.insert(maps.as_ids.at(i));
        ev.time_bins = detail::participating_indices(
            model.time_factors.col(long(r)), thresholds.time_fraction);
        for (std::size_t k : detail::participating_indices(
                 model.vp_factors.col(long(r)), thresholds.vp_fraction))
            ev.vp_set.insert(maps.vp_ids.at(k));
        events.push_back(std::move(ev));
    }
    return events;
}

}  // namespace weblens
