#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "weblens/error.hpp"

namespace weblens {

// Sparse nonnegative count vector over a fixed dimension. Items are sorted
// by index and hold no explicit zeros.
struct SparseVector {
    std::size_t dim = 0;
    std::vector<std::pair<std::size_t, double>> items;

    double sum() const {
        double s = 0.0;
        for (const auto& [i, v] : items) s += v;
        return s;
    }
};

// Lowercases and splits on every non-alphanumeric byte. Bytes >= 0x80 are
// kept as token characters so UTF-8 words survive intact; case folding is
// applied to ASCII letters only.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char ch : text) {
        bool token_char = (ch >= 0x80) || (ch >= '0' && ch <= '9') ||
                          (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z');
        if (token_char) {
            current.push_back(ch >= 'A' && ch <= 'Z' ? char(ch - 'A' + 'a')
                                                     : char(ch));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

// Ordered set of distinct terms with positional lookup.
class Vocabulary {
public:
    Vocabulary() = default;

    // Terms must be distinct; order is preserved.
    static Vocabulary from_terms(std::vector<std::string> terms) {
        Vocabulary v;
        v.terms_ = std::move(terms);
        for (std::size_t i = 0; i < v.terms_.size(); ++i) {
            auto [it, inserted] = v.index_.emplace(v.terms_[i], i);
            if (!inserted)
                throw ConfigError("duplicate vocabulary term: " + v.terms_[i]);
        }
        return v;
    }

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const std::string& term(std::size_t i) const { return terms_.at(i); }
    const std::vector<std::string>& terms() const { return terms_; }

    std::optional<std::size_t> find(std::string_view term) const {
        auto it = index_.find(std::string(term));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Copy of this vocabulary with unseen terms appended at the end.
    Vocabulary with_appended(std::span<const std::string> extra) const {
        std::vector<std::string> terms = terms_;
        for (const auto& t : extra)
            if (!index_.contains(t)) terms.push_back(t);
        return from_terms(std::move(terms));
    }

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Terms whose document frequency df satisfies df >= min_df and
// df/n <= max_df_ratio, sorted lexicographically.
inline Vocabulary build_vocabulary(
    std::span<const std::vector<std::string>> docs, std::size_t min_df,
    double max_df_ratio) {
    if (min_df < 1) throw ConfigError("build_vocabulary: min_df must be >= 1");
    if (max_df_ratio < 0.0 || max_df_ratio > 1.0)
        throw ConfigError("build_vocabulary: max_df_ratio must be in [0,1]");
    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        std::map<std::string, bool> seen;
        for (const auto& tok : doc) {
            if (!seen[tok]) {
                seen[tok] = true;
                ++df[tok];
            }
        }
    }
    const double n = double(docs.size());
    std::vector<std::string> kept;
    for (const auto& [term, count] : df)
        if (count >= min_df && double(count) / n <= max_df_ratio)
            kept.push_back(term);
    return Vocabulary::from_terms(std::move(kept));
}

// Term counts over the vocabulary; out-of-vocabulary tokens are ignored.
inline SparseVector vectorize(std::span<const std::string> tokens,
                              const Vocabulary& vocab) {
    if (vocab.empty()) throw ConfigError("vectorize: empty vocabulary");
    std::map<std::size_t, double> counts;
    for (const auto& tok : tokens)
        if (auto idx = vocab.find(tok)) counts[*idx] += 1.0;
    SparseVector v;
    v.dim = vocab.size();
    v.items.assign(counts.begin(), counts.end());
    return v;
}

// n documents as sparse term-frequency rows over a shared vocabulary.
class DocTermMatrix {
public:
    DocTermMatrix() = default;
    DocTermMatrix(Vocabulary vocab, std::vector<SparseVector> rows,
                  std::vector<std::string> doc_ids)
        : vocab_(std::move(vocab)),
          rows_(std::move(rows)),
          doc_ids_(std::move(doc_ids)) {
        if (rows_.size() != doc_ids_.size())
            throw ConfigError("DocTermMatrix: row count != doc id count");
        for (const auto& row : rows_) {
            if (row.dim != vocab_.size())
                throw ConfigError("DocTermMatrix: row dimension != |V|");
            for (const auto& [j, v] : row.items)
                if (j >= vocab_.size() || v < 0.0)
                    throw ConfigError("DocTermMatrix: bad row entry");
        }
    }

    const Vocabulary& vocab() const { return vocab_; }
    std::size_t doc_count() const { return rows_.size(); }
    const std::vector<SparseVector>& rows() const { return rows_; }
    const SparseVector& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }

private:
    Vocabulary vocab_;
    std::vector<SparseVector> rows_;
    std::vector<std::string> doc_ids_;
};

}  // namespace weblens
