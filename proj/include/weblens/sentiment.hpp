#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weblens/corpus.hpp"
#include "weblens/error.hpp"
#include "weblens/numerics.hpp"

namespace weblens {

// Bipartite document-word graph with adjacency [[0, X], [X^T, 0]]. Vertices
// 0..n-1 are documents (source block first in transfer mode), n..n+|V|-1
// are words. Exposes the graph Laplacian L = D - A as triplets for the
// quadratic fits.
class BipartiteSentimentGraph {
public:
    BipartiteSentimentGraph() = default;

    const DocTermMatrix& docs() const { return docs_; }
    std::size_t doc_count() const { return docs_.doc_count(); }
    std::size_t word_count() const { return docs_.vocab().size(); }
    std::size_t dimension() const { return doc_count() + word_count(); }
    std::size_t source_count() const { return source_count_; }

    // word vertices with zero document frequency
    const std::vector<std::size_t>& isolated_words() const {
        return isolated_words_;
    }

    std::vector<Triplet> laplacian_triplets() const {
        std::vector<Triplet> trip;
        const std::size_t n = doc_count();
        std::vector<double> word_degree(word_count(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double doc_degree = 0.0;
            for (const auto& [j, v] : docs_.row(i).items) {
                doc_degree += v;
                word_degree[j] += v;
                trip.push_back({i, n + j, -v});
                trip.push_back({n + j, i, -v});
            }
            trip.push_back({i, i, doc_degree});
        }
        for (std::size_t j = 0; j < word_count(); ++j)
            trip.push_back({n + j, n + j, word_degree[j]});
        return trip;
    }

    friend BipartiteSentimentGraph build_bipartite(DocTermMatrix docs,
                                                   std::size_t source_count);

private:
    DocTermMatrix docs_;
    std::size_t source_count_ = 0;
    std::vector<std::size_t> isolated_words_;
};

// source_count > 0 declares the first source_count rows a source-domain
// block for transfer fits.
inline BipartiteSentimentGraph build_bipartite(DocTermMatrix docs,
                                               std::size_t source_count = 0) {
    if (docs.doc_count() == 0)
        throw DataError("build_bipartite: empty document matrix");
    if (source_count > docs.doc_count())
        throw ConfigError("build_bipartite: source block exceeds corpus");
    BipartiteSentimentGraph g;
    std::vector<char> seen(docs.vocab().size(), 0);
    for (const auto& row : docs.rows())
        for (const auto& [j, v] : row.items)
            if (v > 0.0) seen[j] = 1;
    for (std::size_t j = 0; j < seen.size(); ++j)
        if (!seen[j]) g.isolated_words_.push_back(j);
    g.docs_ = std::move(docs);
    g.source_count_ = source_count;
    return g;
}

// Sparse ±1 anchors: document labels by row index and lexicon polarities by
// word index.
struct LabelData {
    std::map<std::size_t, int> doc_labels;
    std::map<std::size_t, int> lexicon;
};

struct FitOptions {
    double epsilon = 1e-6;  // ridge keeping unanchored components solvable
    double cg_tol = 1e-8;
    std::size_t cg_max_iter = 0;  // 0 means the solver default
};

// Estimated polarities for documents and words, plus solve metadata.
struct AugmentedClassifier {
    std::vector<double> doc_polarity;
    std::vector<double> word_polarity;
    std::size_t iterations = 0;
    double residual = 0.0;
};

namespace detail {

inline void check_labels(const BipartiteSentimentGraph& g,
                         const LabelData& labels) {
    for (const auto& [i, v] : labels.doc_labels) {
        if (i >= g.doc_count())
            throw DataError("sentiment labels: document index out of range");
        if (v != 1 && v != -1)
            throw DataError("sentiment labels: document label must be +1/-1");
    }
    for (const auto& [j, v] : labels.lexicon) {
        if (j >= g.word_count())
            throw DataError("sentiment labels: word index out of range");
        if (v != 1 && v != -1)
            throw DataError("sentiment labels: lexicon polarity must be +1/-1");
    }
}

// Solve (L + B + eps*I) c_aug = B y for diagonal penalty B and anchor
// vector y.
inline AugmentedClassifier solve_augmented(const BipartiteSentimentGraph& g,
                                           const std::vector<double>& penalty,
                                           const std::vector<double>& anchors,
                                           const FitOptions& opts) {
    const std::size_t dim = g.dimension();
    bool anchored = false;
    for (double b : penalty)
        if (b != 0.0) anchored = true;
    if (!anchored)
        throw DataError("sentiment fit: unanchored system (no labels at all)");

    auto trip = g.laplacian_triplets();
    for (std::size_t i = 0; i < dim; ++i)
        trip.push_back({i, i, penalty[i] + opts.epsilon});
    const auto op = SparseSymmetricOperator::from_triplets(dim, std::move(trip));

    std::vector<double> rhs(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) rhs[i] = penalty[i] * anchors[i];

    CgOptions cg;
    cg.tol = opts.cg_tol;
    cg.max_iter = opts.cg_max_iter;
    auto solved = conjugate_gradient(op, rhs, cg);

    AugmentedClassifier out;
    const std::size_t n = g.doc_count();
    out.doc_polarity.assign(solved.x.begin(), solved.x.begin() + long(n));
    out.word_polarity.assign(solved.x.begin() + long(n), solved.x.end());
    out.iterations = solved.iterations;
    out.residual = solved.residual;
    return out;
}

}  // namespace detail

// Semi-supervised fit: labeled documents are penalized toward their labels
// with weight beta1, lexicon words toward their polarities with beta2, and
// the Laplacian smooths estimates along X edges.
inline AugmentedClassifier semi_supervised_fit(const BipartiteSentimentGraph& g,
                                               const LabelData& labels,
                                               double beta1 = 1.0,
                                               double beta2 = 1.0,
                                               const FitOptions& opts = {}) {
    if (beta1 < 0.0 || beta2 < 0.0)
        throw ConfigError("semi_supervised_fit: penalties must be nonnegative");
    if (beta1 == 0.0 && beta2 == 0.0)
        throw ConfigError("semi_supervised_fit: beta1 and beta2 both zero");
    detail::check_labels(g, labels);
    if (labels.doc_labels.empty() && labels.lexicon.empty())
        throw DataError("semi_supervised_fit: no labels at all");

    const std::size_t n = g.doc_count();
    std::vector<double> penalty(g.dimension(), 0.0);
    std::vector<double> anchors(g.dimension(), 0.0);
    for (const auto& [i, v] : labels.doc_labels) {
        penalty[i] = beta1;
        anchors[i] = double(v);
    }
    for (const auto& [j, v] : labels.lexicon) {
        penalty[n + j] = beta2;
        anchors[n + j] = double(v);
    }
    return detail::solve_augmented(g, penalty, anchors, opts);
}

// Transfer fit over a partitioned corpus: labeled source documents carry
// weight beta1 and pull toward k_s * label, labeled target documents carry
// beta2 toward k_t * label, lexicon words carry beta3.
inline AugmentedClassifier transfer_fit(const BipartiteSentimentGraph& g,
                                        const LabelData& labels,
                                        double beta1 = 1.0, double beta2 = 10.0,
                                        double beta3 = 1.0, double k_s = 1.0,
                                        double k_t = 1.0,
                                        const FitOptions& opts = {}) {
    if (beta1 < 0.0 || beta2 < 0.0 || beta3 < 0.0)
        throw ConfigError("transfer_fit: penalties must be nonnegative");
    if (g.doc_count() == g.source_count())
        throw DataError("transfer_fit: target block is empty");
    detail::check_labels(g, labels);
    if (labels.doc_labels.empty() && labels.lexicon.empty())
        throw DataError("transfer_fit: no labels at all");

    const std::size_t n = g.doc_count();
    const std::size_t n_source = g.source_count();
    std::vector<double> penalty(g.dimension(), 0.0);
    std::vector<double> anchors(g.dimension(), 0.0);
    for (const auto& [i, v] : labels.doc_labels) {
        const bool source = i < n_source;
        penalty[i] = source ? beta1 : beta2;
        anchors[i] = (source ? k_s : k_t) * double(v);
    }
    for (const auto& [j, v] : labels.lexicon) {
        penalty[n + j] = beta3;
        anchors[n + j] = double(v);
    }
    return detail::solve_augmented(g, penalty, anchors, opts);
}

// orient = sign(c^T x); exact zero abstains.
inline int classify_orientation(std::span<const double> word_weights,
                                const SparseVector& doc) {
    if (doc.dim != word_weights.size())
        throw ConfigError("classify_orientation: dimension mismatch");
    double s = 0.0;
    for (const auto& [j, v] : doc.items) s += word_weights[j] * v;
    if (s > 0.0) return 1;
    if (s < 0.0) return -1;
    return 0;
}

// Row-wise L2 normalization, for callers that want frequency-normalized
// features instead of raw counts.
inline DocTermMatrix l2_normalize_rows(const DocTermMatrix& docs) {
    std::vector<SparseVector> rows = docs.rows();
    for (auto& row : rows) {
        double sq = 0.0;
        for (const auto& [j, v] : row.items) sq += v * v;
        if (sq > 0.0) {
            const double inv = 1.0 / std::sqrt(sq);
            for (auto& [j, v] : row.items) v *= inv;
        }
    }
    return DocTermMatrix(docs.vocab(), std::move(rows), docs.doc_ids());
}

}  // namespace weblens
