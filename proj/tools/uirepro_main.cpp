// Command-line front end: reproduce | batch | ablate | oracle | validate-app.
//
// Exit codes: 0 success, 1 runtime error, 2 session finished without
// reproducing the bug, 3 oracle found the bug unreachable, 64 usage error.
// The API key for live endpoints is only ever read from UIREPRO_API_KEY.

#include "uirepro/errors.hpp"
#include "uirepro/llm/http_backend.hpp"
#include "uirepro/llm/mock_backend.hpp"
#include "uirepro/run/metrics.hpp"
#include "uirepro/run/oracle.hpp"
#include "uirepro/run/session.hpp"
#include "uirepro/sim/sim_device.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace uirepro;

constexpr int kExitSuccess = 0;
constexpr int kExitError = 1;
constexpr int kExitNotReproduced = 2;
constexpr int kExitUnreachable = 3;
constexpr int kExitUsage = 64;

// Options shared by reproduce/batch/ablate.
struct RunOptions {
    std::string mock_script;
    std::string endpoint;
    std::string model;
    std::string price_table;
    int max_actions = 100;
    double max_minutes = 60.0;
    int beam = 3;
    int snapshot_cap = 8;
    int64_t token_cap = 0; // 0 = unlimited
    bool normalize = false;
};

void add_run_options(CLI::App* cmd, RunOptions& options) {
    CLI::Option* mock = cmd->add_option("--mock", options.mock_script,
                                        "Scripted LLM backend (JSON rule file)");
    CLI::Option* endpoint = cmd->add_option(
        "--endpoint", options.endpoint,
        "OpenAI-compatible API base, e.g. http://host:8080/v1 (key from UIREPRO_API_KEY)");
    cmd->add_option("--model", options.model, "Model name for --endpoint");
    mock->excludes(endpoint);
    endpoint->excludes(mock);
    cmd->add_option("--price-table", options.price_table,
                    "JSON file with prompt_per_1k/completion_per_1k dollar rates");
    cmd->add_option("--max-actions", options.max_actions, "Action budget per session")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-minutes", options.max_minutes, "Wall-clock budget per session")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--beam", options.beam, "How many paths survive each evaluation round")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--snapshot-cap", options.snapshot_cap, "Device snapshots kept for reuse")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--token-cap", options.token_cap, "Abort once this many tokens were used");
    cmd->add_flag("--normalize-output", options.normalize,
                  "Zero wall-clock fields so outputs compare byte-for-byte");
}

int require_file(const std::string& path, const char* what) {
    if (path.empty()) {
        std::cerr << "error: missing " << what << "\n";
        return kExitUsage;
    }
    if (!fs::exists(path)) {
        std::cerr << "error: " << what << " not found: " << path << "\n";
        return kExitUsage;
    }
    return 0;
}

// `mock_script` may be empty: a live endpoint or a default-only mock is used.
std::unique_ptr<LlmGateway> make_gateway(const RunOptions& options,
                                         const std::string& mock_script) {
    PriceTable prices;
    if (!options.price_table.empty()) {
        prices = load_price_table(options.price_table);
    }
    std::optional<int64_t> cap;
    if (options.token_cap > 0) {
        cap = options.token_cap;
    }
    std::unique_ptr<LlmBackend> backend;
    if (!options.endpoint.empty()) {
        HttpBackendConfig config;
        config.endpoint = options.endpoint;
        config.model = options.model;
        if (const char* key = std::getenv("UIREPRO_API_KEY")) {
            config.api_key = key;
        }
        backend = std::make_unique<HttpBackend>(config);
    } else if (!mock_script.empty()) {
        backend = std::make_unique<MockBackend>(load_mock_script(mock_script));
    } else {
        backend = std::make_unique<MockBackend>();
    }
    return std::make_unique<LlmGateway>(std::move(backend), prices, cap);
}

SessionConfig make_session_config(const RunOptions& options, const Ablations& disable) {
    SessionConfig config;
    config.max_actions = options.max_actions;
    config.max_minutes = options.max_minutes;
    config.beam = options.beam;
    config.snapshot_cap = options.snapshot_cap;
    config.disable = disable;
    if (!options.price_table.empty()) {
        config.price_table = load_price_table(options.price_table);
    }
    return config;
}

int write_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return kExitError;
    }
    return 0;
}

std::optional<Ablations> parse_variant(const std::string& variant) {
    Ablations disable;
    if (variant == "ra") {
        disable.report_analysis = true;
    } else if (variant == "ae") {
        disable.action_exploration = true;
    } else if (variant == "ta") {
        disable.transition_summary = true;
    } else if (variant == "bv") {
        disable.bug_verification = true;
    } else {
        return std::nullopt;
    }
    return disable;
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
    std::string report;
    std::string app;
    std::string out;
    RunOptions run;
};

int cmd_reproduce(const ReproduceArgs& args) {
    if (int code = require_file(args.report, "--report file")) {
        return code;
    }
    if (int code = require_file(args.app, "--app file")) {
        return code;
    }
    if (!args.run.mock_script.empty()) {
        if (int code = require_file(args.run.mock_script, "--mock file")) {
            return code;
        }
    }
    if (!args.run.endpoint.empty() && args.run.model.empty()) {
        std::cerr << "error: --endpoint requires --model\n";
        return kExitUsage;
    }

    BugReport report = load_report(args.report);
    auto app = std::make_shared<const SimApp>(load_app_model(args.app));
    SimDevice device(app);
    std::unique_ptr<LlmGateway> gateway = make_gateway(args.run, args.run.mock_script);
    SessionConfig config = make_session_config(args.run, Ablations{});

    ReproductionResult result = reproduce(report, device, *gateway, config);
    std::string rendered = result_to_json(result, args.run.normalize).dump(2) + "\n";
    if (int code = write_text(args.out, rendered)) {
        return code;
    }
    if (result.metrics.outcome == SessionOutcome::Success) {
        return kExitSuccess;
    }
    if (result.metrics.outcome == SessionOutcome::Error) {
        std::cerr << "error: " << result.metrics.error_message << "\n";
        return kExitError;
    }
    return kExitNotReproduced;
}

// ------------------------------------------------------------- batch/ablate

struct BatchArgs {
    std::string manifest;
    std::string out_csv;
    std::string variant; // ablate only
    int parallel = 1;
    RunOptions run;
};

struct BatchEntry {
    std::string report_path;
    std::string app_path;
    std::string mock_path;
};

std::vector<BatchEntry> load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UnreadableFileError("cannot open manifest: " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaViolationError(path + ": " + e.what());
    }
    if (!doc.is_array()) {
        throw SchemaViolationError(path + ": expected a top-level array");
    }
    fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& relative) {
        fs::path p(relative);
        return p.is_absolute() ? p.string() : (base / p).string();
    };
    std::vector<BatchEntry> entries;
    for (size_t i = 0; i < doc.size(); ++i) {
        const json& item = doc.at(i);
        std::string where = path + "[" + std::to_string(i) + "]";
        if (!item.is_object() || !item.contains("report") || !item.contains("app") ||
            !item.at("report").is_string() || !item.at("app").is_string()) {
            throw SchemaViolationError(where + ": each entry needs string fields 'report' and 'app'");
        }
        BatchEntry entry;
        entry.report_path = resolve(item.at("report").get<std::string>());
        entry.app_path = resolve(item.at("app").get<std::string>());
        if (item.contains("mock")) {
            if (!item.at("mock").is_string()) {
                throw SchemaViolationError(where + ".mock: expected a string path");
            }
            entry.mock_path = resolve(item.at("mock").get<std::string>());
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

int cmd_batch(const BatchArgs& args) {
    if (int code = require_file(args.manifest, "--manifest file")) {
        return code;
    }
    if (!args.run.endpoint.empty() && args.run.model.empty()) {
        std::cerr << "error: --endpoint requires --model\n";
        return kExitUsage;
    }
    Ablations disable;
    if (!args.variant.empty()) {
        std::optional<Ablations> parsed = parse_variant(args.variant);
        if (!parsed) {
            std::cerr << "error: unknown --variant '" << args.variant
                      << "' (expected ra, ae, ta or bv)\n";
            return kExitUsage;
        }
        disable = *parsed;
    }

    std::vector<BatchEntry> entries = load_manifest(args.manifest);
    if (entries.empty()) {
        std::cerr << "error: manifest lists no sessions\n";
        return kExitUsage;
    }

    std::vector<std::string> rows(entries.size());
    std::vector<bool> confirmed(entries.size(), false);
    std::atomic<size_t> next{0};
    std::atomic<bool> worker_failed{false};
    std::string first_failure;
    std::mutex failure_mutex;

    auto work = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= entries.size()) {
                return;
            }
            const BatchEntry& entry = entries[i];
            std::string report_id = fs::path(entry.report_path).stem().string();
            try {
                BugReport report = load_report(entry.report_path);
                auto app = std::make_shared<const SimApp>(load_app_model(entry.app_path));
                SimDevice device(app);
                std::unique_ptr<LlmGateway> gateway = make_gateway(args.run, entry.mock_path);
                SessionConfig config = make_session_config(args.run, disable);
                ReproductionResult result = reproduce(report, device, *gateway, config);
                rows[i] = csv_row(report_id, result.metrics, args.run.normalize, args.variant);
                confirmed[i] = result.metrics.outcome == SessionOutcome::Success;
            } catch (const Error& e) {
                // A session that cannot even start is still one row.
                SessionMetrics metrics;
                metrics.outcome = SessionOutcome::Error;
                rows[i] = csv_row(report_id, metrics, args.run.normalize, args.variant);
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (first_failure.empty()) {
                    first_failure = report_id + ": " + e.what();
                }
                worker_failed = true;
            }
        }
    };

    int workers = std::max(1, std::min<int>(args.parallel, static_cast<int>(entries.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            threads.emplace_back(work);
        }
        for (std::thread& thread : threads) {
            thread.join();
        }
    }

    std::string csv = args.variant.empty() ? kCsvHeader : kCsvHeaderVariant;
    csv += "\n";
    for (const std::string& row : rows) {
        csv += row + "\n";
    }
    csv += csv_sr_line(compute_sr(confirmed)) + "\n";
    if (int code = write_text(args.out_csv, csv)) {
        return code;
    }
    if (worker_failed) {
        std::cerr << "note: some sessions ended in error (first: " << first_failure << ")\n";
    }
    return kExitSuccess;
}

// -------------------------------------------------------------------- oracle

struct OracleArgs {
    std::string app;
    std::string bug;
    size_t max_depth = 25;
};

int cmd_oracle(const OracleArgs& args) {
    if (int code = require_file(args.app, "--app file")) {
        return code;
    }
    auto app = load_app_model(args.app);
    if (app.find_bug(args.bug) == nullptr) {
        std::cerr << "error: app declares no bug '" << args.bug << "'\n";
        return kExitUsage;
    }
    std::optional<std::vector<UIAction>> actions =
        brute_force_oracle(app, args.bug, args.max_depth);
    if (!actions) {
        std::cout << "bug '" << args.bug << "' is not reachable within " << args.max_depth
                  << " actions\n";
        return kExitUnreachable;
    }
    json doc;
    doc["bug"] = args.bug;
    doc["depth"] = actions->size();
    doc["actions"] = json::array();
    for (const UIAction& action : *actions) {
        doc["actions"].push_back(action_to_json(action));
    }
    std::cout << doc.dump(2) << "\n";
    return kExitSuccess;
}

// -------------------------------------------------------------- validate-app

int cmd_validate_app(const std::string& path) {
    if (int code = require_file(path, "--app file")) {
        return code;
    }
    try {
        SimApp app = load_app_model(path);
        std::cout << "ok: " << app.app_name << " (" << app.states.size() << " states, "
                  << app.rules.size() << " rules, " << app.bugs.size() << " bugs)\n";
        return kExitSuccess;
    } catch (const Error& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"uirepro - reproduces GUI bugs from bug reports"};
    app.require_subcommand(1);

    ReproduceArgs reproduce_args;
    CLI::App* reproduce_cmd =
        app.add_subcommand("reproduce", "Reproduce one bug report against an app model");
    reproduce_cmd->add_option("--report", reproduce_args.report, "Bug report text file")
        ->required();
    reproduce_cmd->add_option("--app", reproduce_args.app, "Simulated app model (JSON)")
        ->required();
    reproduce_cmd->add_option("--out", reproduce_args.out, "Write the outcome JSON here");
    add_run_options(reproduce_cmd, reproduce_args.run);

    BatchArgs batch_args;
    CLI::App* batch_cmd = app.add_subcommand("batch", "Run every session in a manifest");
    batch_cmd->add_option("--manifest", batch_args.manifest, "JSON array of sessions")->required();
    batch_cmd->add_option("--out-csv", batch_args.out_csv, "Write the CSV here");
    batch_cmd->add_option("--parallel", batch_args.parallel, "Concurrent sessions")
        ->check(CLI::PositiveNumber);
    add_run_options(batch_cmd, batch_args.run);

    BatchArgs ablate_args;
    CLI::App* ablate_cmd =
        app.add_subcommand("ablate", "Run a manifest with one engine stage disabled");
    ablate_cmd->add_option("--manifest", ablate_args.manifest, "JSON array of sessions")
        ->required();
    ablate_cmd->add_option("--variant", ablate_args.variant, "Stage to disable: ra, ae, ta or bv")
        ->required();
    ablate_cmd->add_option("--out-csv", ablate_args.out_csv, "Write the CSV here");
    ablate_cmd->add_option("--parallel", ablate_args.parallel, "Concurrent sessions")
        ->check(CLI::PositiveNumber);
    add_run_options(ablate_cmd, ablate_args.run);

    OracleArgs oracle_args;
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle", "Find a shortest reproducing action sequence by search");
    oracle_cmd->add_option("--app", oracle_args.app, "Simulated app model (JSON)")->required();
    oracle_cmd->add_option("--bug", oracle_args.bug, "Bug id declared by the app")->required();
    oracle_cmd->add_option("--max-depth", oracle_args.max_depth, "Search depth limit");

    std::string validate_path;
    CLI::App* validate_cmd = app.add_subcommand("validate-app", "Check an app model file");
    validate_cmd->add_option("--app", validate_path, "Simulated app model (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(reproduce_cmd)) {
            return cmd_reproduce(reproduce_args);
        }
        if (app.got_subcommand(batch_cmd)) {
            return cmd_batch(batch_args);
        }
        if (app.got_subcommand(ablate_cmd)) {
            return cmd_batch(ablate_args);
        }
        if (app.got_subcommand(oracle_cmd)) {
            return cmd_oracle(oracle_args);
        }
        if (app.got_subcommand(validate_cmd)) {
            return cmd_validate_app(validate_path);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
