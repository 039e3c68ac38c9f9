#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "weblens/corpus.hpp"
#include "weblens/error.hpp"

namespace weblens {

enum class FramingLabel { Framing, NonFraming };

// Multinomial naive Bayes over a fixed vocabulary with add-alpha smoothing.
// Likelihoods and priors are stored in log space.
struct NaiveBayesModel {
    std::array<double, 2> log_prior{};               // [framing, non-framing]
    std::array<std::vector<double>, 2> log_likelihood{};
    double alpha = 1.0;
    std::size_t vocab_size = 0;
};

inline NaiveBayesModel nb_train(const DocTermMatrix& docs,
                                std::span<const FramingLabel> labels,
                                double alpha = 1.0) {
    if (!(alpha > 0.0)) throw ConfigError("nb_train: alpha must be positive");
    if (labels.size() != docs.doc_count())
        throw ConfigError("nb_train: label count != document count");
    const std::size_t v = docs.vocab().size();

    std::array<std::size_t, 2> doc_count{0, 0};
    std::array<std::vector<double>, 2> term_count;
    term_count[0].assign(v, 0.0);
    term_count[1].assign(v, 0.0);
    std::array<double, 2> token_total{0.0, 0.0};

    for (std::size_t d = 0; d < docs.doc_count(); ++d) {
        const std::size_t cls = labels[d] == FramingLabel::Framing ? 0 : 1;
        ++doc_count[cls];
        for (const auto& [j, count] : docs.row(d).items) {
            term_count[cls][j] += count;
            token_total[cls] += count;
        }
    }
    if (doc_count[0] == 0 || doc_count[1] == 0)
        throw DataError("nb_train: corpus must contain both classes");

    NaiveBayesModel model;
    model.alpha = alpha;
    model.vocab_size = v;
    const double n = double(docs.doc_count());
    for (std::size_t cls = 0; cls < 2; ++cls) {
        model.log_prior[cls] = std::log(double(doc_count[cls]) / n);
        model.log_likelihood[cls].resize(v);
        const double denom = token_total[cls] + alpha * double(v);
        for (std::size_t j = 0; j < v; ++j)
            model.log_likelihood[cls][j] =
                std::log((term_count[cls][j] + alpha) / denom);
    }
    return model;
}

struct NbDecision {
    FramingLabel label = FramingLabel::NonFraming;
    double log_odds = 0.0;  // framing score minus non-framing score
};

// argmax of log prior + sum of count-weighted log likelihoods; an exact
// score tie resolves to non-framing.
inline NbDecision nb_classify(const NaiveBayesModel& model,
                              const SparseVector& doc) {
    if (doc.dim != model.vocab_size)
        throw ConfigError("nb_classify: dimension mismatch");
    std::array<double, 2> score = model.log_prior;
    for (const auto& [j, count] : doc.items) {
        score[0] += count * model.log_likelihood[0][j];
        score[1] += count * model.log_likelihood[1][j];
    }
    NbDecision out;
    out.log_odds = score[0] - score[1];
    out.label = out.log_odds > 0.0 ? FramingLabel::Framing
                                   : FramingLabel::NonFraming;
    return out;
}

}  // namespace weblens
