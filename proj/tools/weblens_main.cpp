// weblens command line: batch pipelines over update logs, hyperlink graphs,
// and document corpora, emitting line-delimited JSON reports.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weblens/corpus.hpp"
#include "weblens/cp_als.hpp"
#include "weblens/discovery.hpp"
#include "weblens/error.hpp"
#include "weblens/events.hpp"
#include "weblens/io.hpp"
#include "weblens/locate.hpp"
#include "weblens/naive_bayes.hpp"
#include "weblens/report.hpp"
#include "weblens/sentiment.hpp"
#include "weblens/tensor.hpp"

namespace {

using nlohmann::json;

// Flat key=value configuration: each key names a long option of the parsed
// subcommand; values already given on the command line win.
void apply_config_file(CLI::App* sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw weblens::ConfigError(path + ": cannot open config file");
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const std::string entry = trim(line);
        if (entry.empty() || entry.front() == '#') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw weblens::ConfigError(path + ":" + std::to_string(lineno) +
                                       ": expected key=value");
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        auto* opt = sub->get_option_no_throw("--" + key);
        if (!opt || key == "config")
            throw weblens::ConfigError(path + ":" + std::to_string(lineno) +
                                       ": unknown config key '" + key + "'");
        if (opt->count() > 0) continue;
        opt->add_result(value);
        opt->run_callback();
    }
}

// required settings may come from the command line or the config file
void require_setting(const CLI::App* sub, const std::string& name) {
    if (sub->get_option(name)->count() == 0)
        throw weblens::ConfigError(std::string(sub->get_name()) +
                                   ": missing required setting " + name);
}

class ReportWriter {
public:
    explicit ReportWriter(const std::string& output_path) {
        if (!output_path.empty() && output_path != "-") {
            file_.open(output_path);
            if (!file_)
                throw weblens::DataError(output_path +
                                         ": cannot open file for writing");
        }
    }

    void header(const std::string& command, json config) {
        emit({{"record", "header"},
              {"version", weblens::kVersion},
              {"command", command},
              {"config", std::move(config)}});
    }

    void emit(const json& record) { stream() << record.dump() << '\n'; }

private:
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    std::ofstream file_;
};

struct CorpusFlags {
    std::size_t min_df = 1;
    double max_df_ratio = 1.0;
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& flags) {
    cmd->add_option("--min-df", flags.min_df,
                    "Minimum document frequency for vocabulary terms")
        ->capture_default_str();
    cmd->add_option("--max-df-ratio", flags.max_df_ratio,
                    "Maximum document frequency as a fraction of the corpus")
        ->capture_default_str();
}

void check_corpus_flags(const CorpusFlags& flags) {
    if (flags.min_df < 1)
        throw weblens::ConfigError("--min-df must be >= 1");
    if (flags.max_df_ratio < 0.0 || flags.max_df_ratio > 1.0)
        throw weblens::ConfigError("--max-df-ratio must be in [0,1]");
}

weblens::Vocabulary corpus_vocabulary(
    const std::vector<std::vector<std::string>>& token_docs,
    const CorpusFlags& flags) {
    return weblens::build_vocabulary(token_docs, flags.min_df,
                                     flags.max_df_ratio);
}

// ---------------------------------------------------------------- detect --

struct DetectArgs {
    std::string updates_path, graph_path, vp_home_path, output, dump_tensor;
    std::string config;
    double start = 0.0;
    bool start_given = false;
    double bin_seconds = 30.0;
    std::size_t bins = 2880;
    std::size_t rank = 0;
    std::size_t components = 1;
    double theta_as = 0.5, theta_time = 0.5, theta_vp = 0.5;
    std::uint64_t seed = 0;
    std::size_t max_sweeps = 200;
    double tol = 1e-6;
    std::vector<std::string> vp_filter;
};

void run_detect(const DetectArgs& args) {
    if (!(args.bin_seconds > 0.0))
        throw weblens::ConfigError("--dt must be positive");
    if (args.bins < 1) throw weblens::ConfigError("--bins must be >= 1");
    if (args.rank < 1) throw weblens::ConfigError("--rank must be >= 1");
    if (!(args.tol > 0.0)) throw weblens::ConfigError("--tol must be positive");
    if (args.max_sweeps < 1)
        throw weblens::ConfigError("--max-sweeps must be >= 1");
    for (double theta : {args.theta_as, args.theta_time, args.theta_vp})
        if (!(theta > 0.0 && theta <= 1.0))
            throw weblens::ConfigError("participation fractions must be in (0,1]");
    if (args.components < 1)
        throw weblens::ConfigError("--components must be >= 1");

    auto updates = weblens::read_update_log(args.updates_path);
    if (updates.empty())
        throw weblens::DataError(args.updates_path + ": no update records");
    double start = args.start;
    if (!args.start_given) {
        start = updates.front().timestamp;
        for (const auto& u : updates) start = std::min(start, u.timestamp);
    }

    std::optional<std::set<std::string>> vp_filter;
    if (!args.vp_filter.empty())
        vp_filter.emplace(args.vp_filter.begin(), args.vp_filter.end());

    auto [tensor, maps] = weblens::assemble_update_tensor(
        updates, start, args.bin_seconds, args.bins, vp_filter);
    if (!args.dump_tensor.empty())
        weblens::write_tensor_file(args.dump_tensor, tensor);

    weblens::CpAlsOptions als;
    als.max_sweeps = args.max_sweeps;
    als.tol = args.tol;
    const auto model = weblens::cp_als(tensor, args.rank, args.seed, als);

    const auto graph =
        weblens::AsGraph::from_edges(weblens::read_edge_list(args.graph_path));
    const auto vp_home = weblens::read_vp_home(args.vp_home_path);

    weblens::EventThresholds thresholds{args.theta_as, args.theta_time,
                                        args.theta_vp};
    const std::size_t top_k = std::min(args.components, model.rank);
    const auto events =
        weblens::extract_events(model, maps, top_k, thresholds);

    ReportWriter report(args.output);
    report.header(
        "detect",
        {{"updates", args.updates_path},
         {"graph", args.graph_path},
         {"vp_home", args.vp_home_path},
         {"start", start},
         {"dt", args.bin_seconds},
         {"bins", args.bins},
         {"rank", args.rank},
         {"components", args.components},
         {"theta_as", args.theta_as},
         {"theta_time", args.theta_time},
         {"theta_vp", args.theta_vp},
         {"seed", args.seed},
         {"max_sweeps", args.max_sweeps},
         {"tol", args.tol},
         {"fit_error", model.sweep_errors.empty() ? 0.0
                                                  : model.sweep_errors.back()},
         {"sweeps", model.sweeps}});

    for (const auto& event : events) {
        const auto causes =
            weblens::rank_candidate_causes(graph, event, vp_home);
        json time_ranges = json::array();
        const auto& win = maps.window;
        auto it = event.time_bins.begin();
        while (it != event.time_bins.end()) {
            const std::size_t first = *it;
            std::size_t last = first;
            ++it;
            while (it != event.time_bins.end() && *it == last + 1) last = *it++;
            const double t0 = win.start + double(first) * win.bin_seconds;
            const double t1 = win.start + double(last + 1) * win.bin_seconds;
            time_ranges.push_back({{"first_bin", first},
                                   {"last_bin", last},
                                   {"start_epoch", t0},
                                   {"start_iso", weblens::iso8601_utc(t0)},
                                   {"end_epoch", t1},
                                   {"end_iso", weblens::iso8601_utc(t1)}});
        }
        json cause_list = json::array();
        for (const auto& [as_id, score] : causes)
            cause_list.push_back({{"as", as_id}, {"score", score}});
        report.emit({{"record", "event"},
                     {"component", event.component_index},
                     {"weight", event.weight},
                     {"as_set", event.as_set},
                     {"time_bins", event.time_bins},
                     {"time_ranges", time_ranges},
                     {"vp_set", event.vp_set},
                     {"causes", cause_list}});
    }
}

// -------------------------------------------------------------- discover --

struct DiscoverArgs {
    std::string seeds_path, candidates_path, output, config;
    double threshold = 0.0;
    CorpusFlags corpus;
};

void run_discover(const DiscoverArgs& args) {
    if (args.threshold < 0.0)
        throw weblens::ConfigError("--threshold must be nonnegative");
    check_corpus_flags(args.corpus);

    const auto seeds = weblens::read_documents(args.seeds_path);
    const auto candidates = weblens::read_documents(args.candidates_path);
    if (seeds.empty())
        throw weblens::DataError(args.seeds_path + ": no seed documents");

    std::vector<std::vector<std::string>> token_docs;
    for (const auto& rec : seeds) token_docs.push_back(weblens::tokenize(rec.text));
    for (const auto& rec : candidates)
        token_docs.push_back(weblens::tokenize(rec.text));
    const auto vocab = corpus_vocabulary(token_docs, args.corpus);
    if (vocab.empty())
        throw weblens::DataError("vocabulary is empty after frequency filtering");

    std::vector<weblens::SparseVector> seed_vecs;
    for (std::size_t i = 0; i < seeds.size(); ++i)
        seed_vecs.push_back(weblens::vectorize(token_docs[i], vocab));
    std::vector<std::pair<std::string, weblens::SparseVector>> cand_vecs;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        cand_vecs.emplace_back(
            candidates[i].id,
            weblens::vectorize(token_docs[seeds.size() + i], vocab));

    // a threshold above 1 can never be met; skip the ranking entirely
    std::vector<weblens::RankedCandidate> ranked;
    if (args.threshold <= 1.0)
        ranked = weblens::rank_candidates(seed_vecs, cand_vecs, args.threshold);

    ReportWriter report(args.output);
    report.header("discover", {{"seeds", args.seeds_path},
                               {"candidates", args.candidates_path},
                               {"threshold", args.threshold},
                               {"min_df", args.corpus.min_df},
                               {"max_df_ratio", args.corpus.max_df_ratio},
                               {"vocabulary_size", vocab.size()}});
    for (const auto& c : ranked)
        report.emit(
            {{"record", "candidate"}, {"id", c.id}, {"score", c.score}});
}

// ------------------------------------------------------------- sentiment --

struct SentimentArgs {
    std::string docs_path, lexicon_path, output, export_weights, weights_path;
    std::string config;
    std::string mode = "semi";
    double beta1 = 1.0;
    double beta2 = -1.0;  // resolved after parse: 1.0 (semi) or 10.0 (transfer)
    double beta3 = 1.0;
    double k_source = 1.0, k_target = 1.0;
    double epsilon = 1e-6;
    double cg_tol = 1e-8;
    std::size_t cg_max_iter = 0;
    bool normalize_rows = false;
    CorpusFlags corpus;
};

void run_sentiment_classify_only(const SentimentArgs& args) {
    const auto weights = weblens::read_word_weights(args.weights_path);
    if (weights.empty())
        throw weblens::DataError(args.weights_path + ": no word weights");
    std::vector<std::string> terms;
    std::vector<double> c;
    for (const auto& [word, weight] : weights) {
        terms.push_back(word);
        c.push_back(weight);
    }
    const auto vocab = weblens::Vocabulary::from_terms(std::move(terms));
    const auto docs = weblens::read_documents(args.docs_path);

    ReportWriter report(args.output);
    report.header("sentiment", {{"docs", args.docs_path},
                                {"weights", args.weights_path},
                                {"mode", "classify"}});
    for (const auto& rec : docs) {
        const auto tokens = weblens::tokenize(rec.text);
        const auto vec = weblens::vectorize(tokens, vocab);
        double score = 0.0;
        for (const auto& [j, v] : vec.items) score += c[j] * v;
        report.emit({{"record", "document"},
                     {"id", rec.id},
                     {"score", score},
                     {"label", weblens::classify_orientation(c, vec)}});
    }
}

void run_sentiment(const SentimentArgs& args) {
    if (!args.weights_path.empty()) {
        run_sentiment_classify_only(args);
        return;
    }
    const bool transfer = args.mode == "transfer";
    if (!transfer && args.mode != "semi")
        throw weblens::ConfigError("--mode must be semi or transfer");
    const double beta2 = args.beta2 >= 0.0 ? args.beta2 : (transfer ? 10.0 : 1.0);
    for (double b : {args.beta1, beta2, args.beta3})
        if (b < 0.0)
            throw weblens::ConfigError("penalty weights must be nonnegative");
    if (!(args.epsilon >= 0.0))
        throw weblens::ConfigError("--epsilon must be nonnegative");
    if (!(args.cg_tol > 0.0))
        throw weblens::ConfigError("--cg-tol must be positive");
    check_corpus_flags(args.corpus);

    auto records = weblens::read_documents(args.docs_path);
    if (records.empty())
        throw weblens::DataError(args.docs_path + ": no documents");

    // transfer mode keeps the source block first; untagged documents are
    // treated as target-domain
    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) order[i] = i;
    std::size_t source_count = 0;
    if (transfer) {
        std::stable_partition(order.begin(), order.end(), [&](std::size_t i) {
            return records[i].domain == weblens::Domain::Source;
        });
        for (const auto& rec : records)
            if (rec.domain == weblens::Domain::Source) ++source_count;
    }

    std::vector<std::vector<std::string>> token_docs;
    for (std::size_t i : order)
        token_docs.push_back(weblens::tokenize(records[i].text));
    auto vocab = corpus_vocabulary(token_docs, args.corpus);

    std::vector<std::pair<std::string, int>> lexicon;
    if (!args.lexicon_path.empty()) {
        lexicon = weblens::read_lexicon(args.lexicon_path);
        std::vector<std::string> lex_terms;
        for (const auto& [word, pol] : lexicon) lex_terms.push_back(word);
        vocab = vocab.with_appended(lex_terms);  // isolated word vertices
    }
    if (vocab.empty())
        throw weblens::DataError("vocabulary is empty after frequency filtering");

    std::vector<weblens::SparseVector> rows;
    std::vector<std::string> ids;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        rows.push_back(weblens::vectorize(token_docs[pos], vocab));
        ids.push_back(records[order[pos]].id);
    }
    weblens::DocTermMatrix matrix(vocab, std::move(rows), std::move(ids));
    if (args.normalize_rows) matrix = weblens::l2_normalize_rows(matrix);

    weblens::LabelData labels;
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        if (records[order[pos]].label) labels.doc_labels[pos] = *records[order[pos]].label;
    for (const auto& [word, pol] : lexicon)
        labels.lexicon[*matrix.vocab().find(word)] = pol;

    const auto graph = weblens::build_bipartite(std::move(matrix), source_count);
    weblens::FitOptions fit_opts;
    fit_opts.epsilon = args.epsilon;
    fit_opts.cg_tol = args.cg_tol;
    fit_opts.cg_max_iter = args.cg_max_iter;

    const auto fit = transfer
                         ? weblens::transfer_fit(graph, labels, args.beta1,
                                                 beta2, args.beta3,
                                                 args.k_source, args.k_target,
                                                 fit_opts)
                         : weblens::semi_supervised_fit(graph, labels,
                                                        args.beta1, beta2,
                                                        fit_opts);

    json config{{"docs", args.docs_path},
                {"mode", args.mode},
                {"beta1", args.beta1},
                {"beta2", beta2},
                {"epsilon", args.epsilon},
                {"cg_tol", args.cg_tol},
                {"normalize_rows", args.normalize_rows},
                {"min_df", args.corpus.min_df},
                {"max_df_ratio", args.corpus.max_df_ratio},
                {"vocabulary_size", graph.word_count()}};
    if (!args.lexicon_path.empty()) config["lexicon"] = args.lexicon_path;
    if (transfer) {
        config["beta3"] = args.beta3;
        config["k_source"] = args.k_source;
        config["k_target"] = args.k_target;
        config["source_documents"] = source_count;
    }

    ReportWriter report(args.output);
    report.header("sentiment", std::move(config));
    report.emit({{"record", "solver"},
                 {"iterations", fit.iterations},
                 {"residual", fit.residual}});

    // document records in input-file order
    std::vector<std::size_t> position_of(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        position_of[order[pos]] = pos;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double d = fit.doc_polarity[position_of[i]];
        json rec{{"record", "document"},
                 {"id", records[i].id},
                 {"d_est", d},
                 {"label", d > 0.0 ? 1 : (d < 0.0 ? -1 : 0)}};
        if (transfer)
            rec["domain"] = i < records.size() && records[i].domain == weblens::Domain::Source
                                ? "source"
                                : "target";
        report.emit(rec);
    }
    const auto& terms = graph.docs().vocab().terms();
    for (std::size_t j = 0; j < terms.size(); ++j)
        report.emit({{"record", "word"},
                     {"term", terms[j]},
                     {"weight", fit.word_polarity[j]}});

    if (!args.export_weights.empty()) {
        std::ofstream out(args.export_weights);
        if (!out)
            throw weblens::DataError(args.export_weights +
                                     ": cannot open file for writing");
        std::vector<std::pair<std::string, double>> weights;
        for (std::size_t j = 0; j < terms.size(); ++j)
            weights.emplace_back(terms[j], fit.word_polarity[j]);
        weblens::write_word_weights(out, weights);
    }
}

// ------------------------------------------------------- classify-framing --

struct FramingArgs {
    std::string train_path, test_path, output, config;
    double alpha = 1.0;
    CorpusFlags corpus;
};

void run_classify_framing(const FramingArgs& args) {
    if (!(args.alpha > 0.0))
        throw weblens::ConfigError("--alpha must be positive");
    check_corpus_flags(args.corpus);

    const auto train = weblens::read_documents(args.train_path);
    if (train.empty())
        throw weblens::DataError(args.train_path + ": no training documents");
    std::vector<weblens::FramingLabel> labels;
    std::vector<std::vector<std::string>> token_docs;
    for (const auto& rec : train) {
        if (!rec.label)
            throw weblens::DataError(args.train_path + ": document '" + rec.id +
                                     "' has no label (+1 framing, -1 non-framing)");
        labels.push_back(*rec.label == 1 ? weblens::FramingLabel::Framing
                                         : weblens::FramingLabel::NonFraming);
        token_docs.push_back(weblens::tokenize(rec.text));
    }
    const auto vocab = corpus_vocabulary(token_docs, args.corpus);
    if (vocab.empty())
        throw weblens::DataError("vocabulary is empty after frequency filtering");

    std::vector<weblens::SparseVector> rows;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < train.size(); ++i) {
        rows.push_back(weblens::vectorize(token_docs[i], vocab));
        ids.push_back(train[i].id);
    }
    const auto model =
        weblens::nb_train(weblens::DocTermMatrix(vocab, std::move(rows),
                                                 std::move(ids)),
                          labels, args.alpha);

    const auto test = weblens::read_documents(args.test_path);
    ReportWriter report(args.output);
    report.header("classify-framing", {{"train", args.train_path},
                                       {"test", args.test_path},
                                       {"alpha", args.alpha},
                                       {"min_df", args.corpus.min_df},
                                       {"max_df_ratio", args.corpus.max_df_ratio},
                                       {"vocabulary_size", vocab.size()}});
    for (const auto& rec : test) {
        const auto tokens = weblens::tokenize(rec.text);
        const auto decision =
            weblens::nb_classify(model, weblens::vectorize(tokens, vocab));
        report.emit({{"record", "document"},
                     {"id", rec.id},
                     {"label", decision.label == weblens::FramingLabel::Framing
                                   ? "framing"
                                   : "non-framing"},
                     {"log_odds", decision.log_odds}});
    }
}

// -------------------------------------------------------------- ideology --

struct IdeologyArgs {
    std::string graph_path, group_a_path, group_b_path, output, config;
    std::vector<std::string> targets;
};

void run_ideology(const IdeologyArgs& args) {
    const auto graph =
        weblens::WebGraph::from_edges(weblens::read_edge_list(args.graph_path));
    const auto group_a = weblens::read_site_list(args.group_a_path);
    const auto group_b = weblens::read_site_list(args.group_b_path);

    ReportWriter report(args.output);
    report.header("ideology", {{"graph", args.graph_path},
                               {"group_a", args.group_a_path},
                               {"group_b", args.group_b_path}});
    for (const auto& target : args.targets) {
        const auto label =
            weblens::classify_ideology(graph, group_a, group_b, target);
        const char* name = label == weblens::IdeologyLabel::GroupA ? "A"
                           : label == weblens::IdeologyLabel::GroupB
                               ? "B"
                               : "undetermined";
        report.emit({{"record", "site"}, {"id", target}, {"label", name}});
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Web analytics pipelines: disruption detection, seeded "
                 "discovery, and graph-based sentiment"};
    app.require_subcommand(1);

    DetectArgs detect;
    auto* cmd_detect = app.add_subcommand(
        "detect", "Detect and localize large events in a BGP update log");
    cmd_detect->add_option("--config", detect.config,
                           "Flat key=value configuration file");
    cmd_detect->add_option("--updates", detect.updates_path,
                           "Update log (timestamp/prefix/origin_as/vp TSV)");
    cmd_detect->add_option("--graph", detect.graph_path,
                           "AS adjacency edge list");
    cmd_detect->add_option("--vp-home", detect.vp_home_path,
                           "VP to home-AS map (vp/as TSV)");
    auto* start_opt = cmd_detect->add_option(
        "--start", detect.start, "Window start (epoch seconds; default: "
                                 "earliest record)");
    cmd_detect->add_option("--dt", detect.bin_seconds, "Bin width in seconds")
        ->capture_default_str();
    cmd_detect->add_option("--bins", detect.bins, "Number of time bins")
        ->capture_default_str();
    cmd_detect->add_option("--rank", detect.rank, "CP decomposition rank");
    cmd_detect->add_option("--components", detect.components,
                           "Top components to report as events")
        ->capture_default_str();
    cmd_detect->add_option("--theta-as", detect.theta_as,
                           "AS participation fraction")->capture_default_str();
    cmd_detect->add_option("--theta-time", detect.theta_time,
                           "Time-bin participation fraction")
        ->capture_default_str();
    cmd_detect->add_option("--theta-vp", detect.theta_vp,
                           "VP participation fraction")->capture_default_str();
    cmd_detect->add_option("--seed", detect.seed,
                           "Random seed for the factor initialization");
    cmd_detect->add_option("--max-sweeps", detect.max_sweeps,
                           "ALS sweep limit")->capture_default_str();
    cmd_detect->add_option("--tol", detect.tol, "ALS fit-change tolerance")
        ->capture_default_str();
    cmd_detect->add_option("--vp", detect.vp_filter,
                           "Restrict to these vantage points (repeatable)");
    cmd_detect->add_option("--dump-tensor", detect.dump_tensor,
                           "Write the assembled tensor to this file");
    cmd_detect->add_option("--output", detect.output,
                           "Report file (default: stdout)");

    DiscoverArgs discover;
    auto* cmd_discover = app.add_subcommand(
        "discover", "Rank candidate documents by similarity to seed documents");
    cmd_discover->add_option("--config", discover.config,
                             "Flat key=value configuration file");
    cmd_discover->add_option("--seeds", discover.seeds_path, "Seed documents");
    cmd_discover->add_option("--candidates", discover.candidates_path,
                             "Candidate documents");
    cmd_discover->add_option("--threshold", discover.threshold,
                             "Minimum similarity score");
    add_corpus_flags(cmd_discover, discover.corpus);
    cmd_discover->add_option("--output", discover.output,
                             "Report file (default: stdout)");

    SentimentArgs sentiment;
    auto* cmd_sentiment = app.add_subcommand(
        "sentiment", "Estimate document and word polarities over the "
                     "document-word graph");
    cmd_sentiment->add_option("--config", sentiment.config,
                              "Flat key=value configuration file");
    cmd_sentiment->add_option("--docs", sentiment.docs_path, "Document corpus");
    cmd_sentiment->add_option("--lexicon", sentiment.lexicon_path,
                              "Sentiment lexicon (word/polarity TSV)");
    cmd_sentiment->add_option("--mode", sentiment.mode,
                              "Fit mode: semi or transfer")
        ->capture_default_str();
    cmd_sentiment->add_option("--beta1", sentiment.beta1,
                              "Document-label penalty (source labels in "
                              "transfer mode)")
        ->capture_default_str();
    cmd_sentiment->add_option("--beta2", sentiment.beta2,
                              "Lexicon penalty in semi mode, target-label "
                              "penalty in transfer mode (default 1.0 / 10.0)");
    cmd_sentiment->add_option("--beta3", sentiment.beta3,
                              "Lexicon penalty in transfer mode")
        ->capture_default_str();
    cmd_sentiment->add_option("--ks", sentiment.k_source,
                              "Source label scale in transfer mode")
        ->capture_default_str();
    cmd_sentiment->add_option("--kt", sentiment.k_target,
                              "Target label scale in transfer mode")
        ->capture_default_str();
    cmd_sentiment->add_option("--epsilon", sentiment.epsilon,
                              "Diagonal ridge")->capture_default_str();
    cmd_sentiment->add_option("--cg-tol", sentiment.cg_tol,
                              "Conjugate gradient tolerance")
        ->capture_default_str();
    cmd_sentiment->add_option("--cg-max-iter", sentiment.cg_max_iter,
                              "Conjugate gradient iteration cap (0: default)")
        ->capture_default_str();
    cmd_sentiment->add_flag("--normalize-rows", sentiment.normalize_rows,
                            "L2-normalize document rows before the fit");
    cmd_sentiment->add_option("--export-weights", sentiment.export_weights,
                              "Write word weights to this TSV file");
    cmd_sentiment->add_option("--weights", sentiment.weights_path,
                              "Classify-only: reuse exported word weights");
    add_corpus_flags(cmd_sentiment, sentiment.corpus);
    cmd_sentiment->add_option("--output", sentiment.output,
                              "Report file (default: stdout)");

    FramingArgs framing;
    auto* cmd_framing = app.add_subcommand(
        "classify-framing", "Train on labeled exemplars and label test "
                            "documents as framing or non-framing");
    cmd_framing->add_option("--config", framing.config,
                            "Flat key=value configuration file");
    cmd_framing->add_option("--train", framing.train_path,
                            "Labeled training documents (+1 framing, -1 "
                            "non-framing)");
    cmd_framing->add_option("--test", framing.test_path, "Documents to label");
    cmd_framing->add_option("--alpha", framing.alpha, "Smoothing constant")
        ->capture_default_str();
    add_corpus_flags(cmd_framing, framing.corpus);
    cmd_framing->add_option("--output", framing.output,
                            "Report file (default: stdout)");

    IdeologyArgs ideology;
    auto* cmd_ideology = app.add_subcommand(
        "ideology", "Classify sites by the linking habits of their inlinkers");
    cmd_ideology->add_option("--config", ideology.config,
                             "Flat key=value configuration file");
    cmd_ideology->add_option("--graph", ideology.graph_path,
                             "Hyperlink edge list");
    cmd_ideology->add_option("--group-a", ideology.group_a_path,
                             "Exemplar sites for camp A (one per line)");
    cmd_ideology->add_option("--group-b", ideology.group_b_path,
                             "Exemplar sites for camp B (one per line)");
    cmd_ideology->add_option("--target", ideology.targets,
                             "Site to classify (repeatable)");
    cmd_ideology->add_option("--output", ideology.output,
                             "Report file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_detect->parsed()) {
            if (!detect.config.empty())
                apply_config_file(cmd_detect, detect.config);
            for (const char* name :
                 {"--updates", "--graph", "--vp-home", "--rank", "--seed"})
                require_setting(cmd_detect, name);
            detect.start_given = start_opt->count() > 0;
            run_detect(detect);
        }
        if (cmd_discover->parsed()) {
            if (!discover.config.empty())
                apply_config_file(cmd_discover, discover.config);
            for (const char* name : {"--seeds", "--candidates", "--threshold"})
                require_setting(cmd_discover, name);
            run_discover(discover);
        }
        if (cmd_sentiment->parsed()) {
            if (!sentiment.config.empty())
                apply_config_file(cmd_sentiment, sentiment.config);
            require_setting(cmd_sentiment, "--docs");
            run_sentiment(sentiment);
        }
        if (cmd_framing->parsed()) {
            if (!framing.config.empty())
                apply_config_file(cmd_framing, framing.config);
            for (const char* name : {"--train", "--test"})
                require_setting(cmd_framing, name);
            run_classify_framing(framing);
        }
        if (cmd_ideology->parsed()) {
            if (!ideology.config.empty())
                apply_config_file(cmd_ideology, ideology.config);
            for (const char* name :
                 {"--graph", "--group-a", "--group-b", "--target"})
                require_setting(cmd_ideology, name);
            run_ideology(ideology);
        }
    } catch (const weblens::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const weblens::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const weblens::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
