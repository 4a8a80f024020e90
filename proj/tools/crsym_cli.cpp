// crsym: analyze model hypersurfaces Im w = P(z, conj z).
//
// Exit codes: 0 complete, 2 invalid model, 3 degenerate model, 4 internal invariant violation.
// In batch mode the exit code is the largest over all files.

#include "crsym/errors.hpp"
#include "crsym/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace crsym;

namespace {

enum Exit { kComplete = 0, kInvalid = 2, kDegenerate = 3, kInternal = 4 };

struct Outcome {
    int code = kComplete;
    std::optional<AnalysisReport> report;
    std::string error;
};

ModelSource load(const std::string &arg)
{
    std::error_code ec;
    if (fs::is_regular_file(arg, ec))
        return read_model_file(arg);
    if (arg.find('=') != std::string::npos)
        return parse_model_text(arg);
    return ModelSource{arg, std::nullopt};
}

Outcome run(const std::string &arg, const AnalyzeOptions &opts)
{
    Outcome out;
    try {
        out.report = analyze(load(arg), opts);
        out.code = out.report->status == ReportStatus::Degenerate ? kDegenerate : kComplete;
    } catch (const Error &e) {
        out.error = e.what();
        out.code = e.kind() == ErrorKind::InternalRankDrop ? kInternal
                   : e.kind() == ErrorKind::DegenerateModel ? kDegenerate
                                                            : kInvalid;
    } catch (const std::exception &e) {
        out.error = std::string("internal error: ") + e.what();
        out.code = kInternal;
    }
    return out;
}

std::string render(const Outcome &o, bool json)
{
    if (json) {
        if (o.report)
            return to_json(*o.report);
        return nlohmann::json{{"error", o.error}, {"exit_code", o.code}}.dump(2);
    }
    return o.report ? to_text(*o.report) : "error: " + o.error + "\n";
}

int batch(const std::string &dir, const AnalyzeOptions &opts, bool json, unsigned threads)
{
    std::vector<std::string> files;
    for (const auto &e : fs::directory_iterator(dir))
        if (e.is_regular_file())
            files.push_back(e.path().string());
    std::sort(files.begin(), files.end());

    std::vector<Outcome> results(files.size());
    std::atomic<std::size_t> next{0};
    AnalyzeOptions per_file = opts;
    per_file.threads = 1;
    auto worker = [&] {
        for (std::size_t k; (k = next++) < files.size();)
            results[k] = run(files[k], per_file);
    };
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(files.size(), 1));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();

    int code = kComplete;
    if (json) {
        auto all = nlohmann::json::array();
        for (std::size_t k = 0; k < files.size(); ++k)
            all.push_back({{"file", fs::path(files[k]).filename().string()},
                           {"exit_code", results[k].code},
                           {"report", nlohmann::json::parse(render(results[k], true))}});
        std::cout << all.dump(2) << "\n";
    }
    for (std::size_t k = 0; k < files.size(); ++k) {
        code = std::max(code, results[k].code);
        if (!json)
            std::cout << "== " << fs::path(files[k]).filename().string() << " (exit " << results[k].code
                      << ")\n"
                      << render(results[k], false) << "\n";
    }
    return code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Symmetry analysis of weighted homogeneous model hypersurfaces Im w = P"};
    std::string input, weights, max_weight, component, batch_dir;
    bool json = false;
    AnalyzeOptions opts;
    unsigned threads = 0;

    app.add_option("model", input, "Model file, \"Im w = <expr>\", or a bare expression");
    app.add_option("--weights", weights, "Weights a/b,c/d,... (override the file)");
    app.add_option("--max-degeneracy-weight", max_weight, "Largest field weight searched for degeneracy");
    app.add_flag("--json", json, "Emit the JSON report");
    app.add_flag("--skip-embedding", opts.skip_embedding, "Do not build hyperquadric embeddings");
    app.add_option("--component", component, "Only compute the graded component of this weight");
    app.add_flag("--strip-pluriharmonic", opts.strip_pluriharmonic,
                 "Remove pluriharmonic terms instead of rejecting the model");
    app.add_option("--batch", batch_dir, "Analyze every file in a directory")->check(CLI::ExistingDirectory);
    app.add_option("--threads", threads, "Worker threads (0 = hardware count)");
    CLI11_PARSE(app, argc, argv);

    try {
        if (!weights.empty())
            opts.weights = parse_weight_list(weights);
        if (!max_weight.empty())
            opts.max_degeneracy_weight = parse_weight_list(max_weight).at(0);
        if (!component.empty())
            opts.component = parse_weight_list(component).at(0);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    opts.threads = threads;

    if (!batch_dir.empty())
        return batch(batch_dir, opts, json, threads);
    if (input.empty()) {
        std::cerr << app.help();
        return kInvalid;
    }
    Outcome o = run(input, opts);
    (o.report ? std::cout : std::cerr) << render(o, json) << (json ? "\n" : "");
    return o.code;
}
