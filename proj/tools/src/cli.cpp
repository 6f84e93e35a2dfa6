#include "cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <ostream>

namespace paire::cli {

namespace fs = std::filesystem;

std::pair<fs::path, fs::path> RunConfig::dataset_files() const {
    fs::path content_path = content;
    fs::path cites_path = cites;
    if (!dataset.empty()) {
        fs::path prefix = dataset;
        if (fs::is_directory(dataset)) {
            prefix = dataset / dataset.filename();
            if (prefix.filename().empty()) {
                prefix = dataset.parent_path() / dataset.parent_path().filename();
            }
        }
        if (content_path.empty()) content_path = fs::path(prefix.string() + ".content");
        if (cites_path.empty()) cites_path = fs::path(prefix.string() + ".cites");
    }
    if (content_path.empty() || cites_path.empty()) {
        throw ConfigError("no dataset: pass --dataset or both --content and --cites");
    }
    return {content_path, cites_path};
}

std::string RunConfig::dataset_name() const {
    if (!dataset.empty()) {
        fs::path p = dataset;
        if (p.filename().empty()) p = p.parent_path();
        return p.filename().string();
    }
    if (!content.empty()) {
        return content.stem().string();
    }
    return "-";
}

namespace {

Graph load(const RunConfig& cfg) {
    auto [content, cites] = cfg.dataset_files();
    LoadOptions options;
    options.directed = cfg.directed;
    return load_graph(content, cites, options);
}

EpochCallback epoch_logger(const RunConfig& cfg, std::ostream& log) {
    if (!cfg.verbose) {
        return {};
    }
    return [&log](std::size_t epoch, double loss) { log << "epoch " << epoch + 1 << " loss " << loss << '\n'; };
}

/// Node embeddings for node-level tasks: read from cfg.embeddings (translated
/// if it holds pairs) or trained on the full graph.
EmbeddingTable node_table(const RunConfig& cfg, const Graph& g, std::ostream& log) {
    if (!cfg.embeddings.empty()) {
        EmbeddingTable t = read_embedding_file(cfg.embeddings);
        if (t.kind() == EmbeddingKind::pair) {
            return translate(t.pair_set(g.num_nodes()), t, cfg.translator);
        }
        return t;
    }
    if (cfg.mode == Mode::node_ablation) {
        return EmbeddingTable::for_nodes(train_node_model(g, cfg.train, {}, epoch_logger(cfg, log)).embeddings);
    }
    PairModel model = train_pair_model(g, cfg.train, {}, epoch_logger(cfg, log));
    return translate(model.pairs, model.result.embeddings, cfg.translator);
}

EmbedderFactory pair_embedder(const RunConfig& cfg) {
    if (!cfg.embeddings.empty()) {
        EmbeddingTable t = read_embedding_file(cfg.embeddings);
        if (t.kind() != EmbeddingKind::node) {
            throw TaskError("pair tasks retrain on each split; only a NODE embedding file can be evaluated");
        }
        return fixed_node_embedder(std::move(t));
    }
    return cfg.mode == Mode::node_ablation ? node_ablation_embedder(cfg.train) : paire_embedder(cfg.train);
}

}  // namespace

EmbeddingTable cmd_embed(const RunConfig& cfg, std::ostream& log) {
    if (cfg.out.empty()) {
        throw ConfigError("embed needs --out");
    }
    Graph g = load(cfg);
    EmbeddingTable table;
    if (cfg.mode == Mode::node_ablation) {
        table = EmbeddingTable::for_nodes(train_node_model(g, cfg.train, {}, epoch_logger(cfg, log)).embeddings);
    } else {
        PairModel model = train_pair_model(g, cfg.train, {}, epoch_logger(cfg, log));
        table = EmbeddingTable::for_pairs(model.pairs.pairs(), std::move(model.result.embeddings));
    }
    write_embedding_file(cfg.out, table);
    return table;
}

EmbeddingTable cmd_translate(const RunConfig& cfg) {
    if (cfg.embeddings.empty() || cfg.out.empty()) {
        throw ConfigError("translate needs --embeddings and --out");
    }
    EmbeddingTable pairs = read_embedding_file(cfg.embeddings);
    if (pairs.kind() != EmbeddingKind::pair) {
        throw ContractError(cfg.embeddings.string() + " holds node embeddings, not pairs");
    }
    std::size_t num_nodes = pairs.implied_node_count();
    if (!cfg.dataset.empty() || !cfg.content.empty()) {
        num_nodes = load(cfg).num_nodes();
    }
    EmbeddingTable nodes = translate(pairs.pair_set(num_nodes), pairs, cfg.translator);
    write_embedding_file(cfg.out, nodes);
    return nodes;
}

std::vector<EvalReport> cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    if (cfg.tasks.empty()) {
        throw ConfigError("eval needs at least one --task");
    }
    Graph g = load(cfg);
    ProtocolConfig protocol;
    protocol.runs = cfg.runs;
    protocol.base_seed = cfg.train.seed;
    protocol.dataset = cfg.dataset_name();

    std::optional<EmbeddingTable> nodes;
    std::optional<EmbedderFactory> embedder;
    std::vector<EvalReport> reports;
    for (Task task : cfg.tasks) {
        if (task == Task::link_prediction || task == Task::pairwise) {
            if (!embedder) embedder = pair_embedder(cfg);
            reports.push_back(run_task(task, g, &*embedder, nullptr, protocol));
        } else {
            if (!nodes) nodes = node_table(cfg, g, log);
            reports.push_back(run_task(task, g, nullptr, &*nodes, protocol));
        }
        write_table(out, reports.back());
    }
    if (!cfg.out.empty()) {
        write_report_file(cfg.out, reports);
    }
    return reports;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Pair-level graph embeddings and their evaluation", "paire"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.require_subcommand(1);

    const std::map<std::string, Mode> modes{{"paire", Mode::paire}, {"node-ablation", Mode::node_ablation}};
    const std::map<std::string, TranslatorMode> translators{{"sum", TranslatorMode::sum},
                                                            {"mean", TranslatorMode::mean},
                                                            {"max", TranslatorMode::max},
                                                            {"min", TranslatorMode::min}};
    const std::map<std::string, Task> tasks{{"link-pred", Task::link_prediction},
                                            {"pairwise", Task::pairwise},
                                            {"node-class", Task::node_classification},
                                            {"cluster", Task::clustering}};

    app.add_option("--dataset", cfg.dataset, "dataset directory or file prefix");
    app.add_option("--content", cfg.content, "node content file");
    app.add_option("--cites", cfg.cites, "citation edge file");
    app.add_flag("--directed", cfg.directed, "keep edge direction when loading");
    app.add_option("--dim", cfg.train.embedding_dim, "embedding dimension")->capture_default_str();
    app.add_option("--hidden", cfg.train.hidden_width, "hidden layer width")->capture_default_str();
    app.add_option("--epochs", cfg.train.epochs, "training epochs")->capture_default_str();
    app.add_option("--batch", cfg.train.batch_size, "minibatch size")->capture_default_str();
    app.add_option("--lr", cfg.train.learning_rate, "learning rate")->capture_default_str();
    app.add_option("--seed", cfg.train.seed, "random seed; eval run i uses seed + i")->capture_default_str();
    app.add_option("--mode", cfg.mode, "paire or node-ablation")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->option_text("MODE [paire]");
    app.add_option("--translator", cfg.translator, "sum, mean, max or min")
        ->transform(CLI::CheckedTransformer(translators, CLI::ignore_case))
        ->option_text("NAME [sum]");
    app.add_option("--task", cfg.tasks, "link-pred, pairwise, node-class or cluster (repeatable)")
        ->transform(CLI::CheckedTransformer(tasks, CLI::ignore_case))
        ->option_text("TASK ...");
    app.add_option("--runs", cfg.runs, "evaluation runs")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out, "output file");
    app.add_option("--embeddings", cfg.embeddings, "input embedding file");
    app.add_flag("-v,--verbose", cfg.verbose, "log per-epoch loss");

    auto* embed_cmd = app.add_subcommand("embed", "train and write embeddings")->fallthrough();
    auto* translate_cmd = app.add_subcommand("translate", "turn pair embeddings into node embeddings")->fallthrough();
    auto* eval_cmd = app.add_subcommand("eval", "run downstream evaluation tasks")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        cfg.train.validate();
        if (embed_cmd->parsed()) {
            cmd_embed(cfg, err);
        } else if (translate_cmd->parsed()) {
            cmd_translate(cfg);
        } else if (eval_cmd->parsed()) {
            cmd_eval(cfg, out, err);
        }
    } catch (const ConfigError& e) {
        err << "paire: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "paire: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace paire::cli
