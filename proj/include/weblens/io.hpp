#pragma once

#include <cmath>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weblens/error.hpp"
#include "weblens/events.hpp"
#include "weblens/tensor.hpp"

namespace weblens {

enum class Domain { Source, Target };

// One line of a document file: id, free text, optional +1/-1 label,
// optional domain tag.
struct DocRecord {
    std::string id;
    std::string text;
    std::optional<int> label;
    std::optional<Domain> domain;
};

namespace io_detail {

inline std::ifstream open_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError(path + ": cannot open file");
    return in;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t tab = line.find('\t', pos);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, tab - pos));
        pos = tab + 1;
    }
}

inline DataError line_error(const std::string& path, std::size_t lineno,
                            const std::string& msg) {
    return DataError(path + ":" + std::to_string(lineno) + ": " + msg);
}

inline double parse_double(const std::string& path, std::size_t lineno,
                           const std::string& field, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size() || !std::isfinite(v)) throw std::exception();
        return v;
    } catch (...) {
        throw line_error(path, lineno,
                         std::string("malformed ") + what + " '" + field + "'");
    }
}

inline int parse_polarity(const std::string& path, std::size_t lineno,
                          const std::string& field) {
    if (field == "+1" || field == "1") return 1;
    if (field == "-1") return -1;
    throw line_error(path, lineno, "polarity must be +1 or -1, got '" + field + "'");
}

// Applies fn(lineno, line) to every non-comment, non-blank line.
template <class Fn>
void for_each_record(const std::string& path, Fn&& fn) {
    auto in = open_text(path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        fn(lineno, line);
    }
}

}  // namespace io_detail

// `from<TAB>to` per line; shared by the hyperlink and AS graph loaders.
inline std::vector<std::pair<std::string, std::string>> read_edge_list(
    const std::string& path) {
    std::vector<std::pair<std::string, std::string>> edges;
    io_detail::for_each_record(path, [&](std::size_t lineno,
                                         const std::string& line) {
        auto fields = io_detail::split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw io_detail::line_error(path, lineno,
                                        "expected 'from<TAB>to'");
        edges.emplace_back(std::move(fields[0]), std::move(fields[1]));
    });
    return edges;
}

// `timestamp<TAB>prefix<TAB>origin_as<TAB>vp` per line.
inline std::vector<UpdateRecord> read_update_log(const std::string& path) {
    std::vector<UpdateRecord> updates;
    io_detail::for_each_record(path, [&](std::size_t lineno,
                                         const std::string& line) {
        auto fields = io_detail::split_tabs(line);
        if (fields.size() != 4)
            throw io_detail::line_error(
                path, lineno, "expected 'timestamp<TAB>prefix<TAB>origin_as<TAB>vp'");
        UpdateRecord rec;
        rec.timestamp =
            io_detail::parse_double(path, lineno, fields[0], "timestamp");
        rec.prefix = std::move(fields[1]);
        rec.origin_as = std::move(fields[2]);
        rec.vp = std::move(fields[3]);
        if (rec.prefix.empty() || rec.origin_as.empty() || rec.vp.empty())
            throw io_detail::line_error(path, lineno, "empty identifier field");
        updates.push_back(std::move(rec));
    });
    return updates;
}

// `vp<TAB>as` per line.
inline std::map<std::string, std::string> read_vp_home(const std::string& path) {
    std::map<std::string, std::string> home;
    io_detail::for_each_record(path, [&](std::size_t lineno,
                                         const std::string& line) {
        auto fields = io_detail::split_tabs(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw io_detail::line_error(path, lineno, "expected 'vp<TAB>as'");
        home[fields[0]] = fields[1];
    });
    return home;
}

// `word<TAB>+1|-1` per line.
inline std::vector<std::pair<std::string, int>> read_lexicon(
    const std::string& path) {
    std::vector<std::pair<std::string, int>> lexicon;
    io_detail::for_each_record(path, [&](std::size_t lineno,
                                         const std::string& line) {
        auto fields = io_detail::split_tabs(line);
        if (fields.size() != 2 || fields[0].empty())
            throw io_detail::line_error(path, lineno,
                                        "expected 'word<TAB>polarity'");
        lexicon.emplace_back(fields[0],
                             io_detail::parse_polarity(path, lineno, fields[1]));
    });
    return lexicon;
}

// `word<TAB>weight` per line, the classifier export format.
inline std::vector<std::pair<std::string, double>> read_word_weights(
    const std::string& path) {
    std::vector<std::pair<std::string, double>> weights;
    io_detail::for_each_record(path, [&](std::size_t lineno,
                                         const std::string& line) {
        auto fields = io_detail::split_tabs(line);
        if (fields.size() != 2 || fields[0].empty())
            throw io_detail::line_error(path, lineno, "expected 'word<TAB>weight'");
        weights.emplace_back(
            fields[0], io_detail::parse_double(path, lineno, fields[1], "weight"));
    });
    return weights;
}

inline void write_word_weights(
    std::ostream& os, const std::vector<std::pair<std::string, double>>& w) {
    char buf[40];
    for (const auto& [word, weight] : w) {
        std::snprintf(buf, sizeof(buf), "%.17g", weight);
        os << word << '\t' << buf << '\n';
    }
}

// One site per line.
inline std::set<std::string> read_site_list(const std::string& path) {
    std::set<std::string> sites;
    io_detail::for_each_record(
        path, [&](std::size_t, const std::string& line) { sites.insert(line); });
    return sites;
}

// Document records: `id<TAB>[label=+1|-1<TAB>][domain=source|target<TAB>]text`.
// Marker fields may appear in either order; the first field that is not a
// marker starts the text (remaining tabs belong to it).
inline std::vector<DocRecord> read_documents(const std::string& path) {
    std::vector<DocRecord> docs;
    std::set<std::string> ids;
    io_detail::for_each_record(path, [&](std::size_t lineno,
                                         const std::string& line) {
        auto fields = io_detail::split_tabs(line);
        if (fields.size() < 2 || fields[0].empty())
            throw io_detail::line_error(path, lineno, "expected 'id<TAB>...text'");
        DocRecord rec;
        rec.id = fields[0];
        if (!ids.insert(rec.id).second)
            throw io_detail::line_error(path, lineno,
                                        "duplicate document id '" + rec.id + "'");
        std::size_t pos = 1;
        while (pos + 1 < fields.size()) {
            const std::string& f = fields[pos];
            if (f.starts_with("label=")) {
                if (rec.label)
                    throw io_detail::line_error(path, lineno, "repeated label field");
                rec.label = io_detail::parse_polarity(path, lineno, f.substr(6));
            } else if (f.starts_with("domain=")) {
                if (rec.domain)
                    throw io_detail::line_error(path, lineno, "repeated domain field");
                const std::string d = f.substr(7);
                if (d == "source")
                    rec.domain = Domain::Source;
                else if (d == "target")
                    rec.domain = Domain::Target;
                else
                    throw io_detail::line_error(
                        path, lineno, "domain must be source or target, got '" + d + "'");
            } else {
                break;
            }
            ++pos;
        }
        rec.text = fields[pos];
        for (std::size_t i = pos + 1; i < fields.size(); ++i)
            rec.text += '\t' + fields[i];
        docs.push_back(std::move(rec));
    });
    return docs;
}

inline SparseTensor3 read_tensor_file(const std::string& path) {
    auto in = io_detail::open_text(path);
    try {
        return read_tensor(in);
    } catch (const DataError& e) {
        throw DataError(path + ": " + e.what());
    }
}

inline void write_tensor_file(const std::string& path, const SparseTensor3& t) {
    std::ofstream out(path);
    if (!out) throw DataError(path + ": cannot open file for writing");
    write_tensor(out, t);
}

}  // namespace weblens
