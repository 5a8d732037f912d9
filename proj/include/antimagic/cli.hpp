#ifndef ANTIMAGIC_CLI_HPP
#define ANTIMAGIC_CLI_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "antimagic/construction.hpp"
#include "antimagic/errors.hpp"
#include "antimagic/generators.hpp"
#include "antimagic/graph_core.hpp"
#include "antimagic/io.hpp"
#include "antimagic/oracle.hpp"
#include "antimagic/verification.hpp"

namespace antimagic::cli {

// Exit code contract.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kInputError = 2,
    kInternalError = 3,
    kResourceRefusal = 4,
};

struct InputInstance {
    std::size_t line_no = 0;
    std::string text;
    std::vector<std::size_t> leaf_counts;
};

// Reads canonical caterpillar lines, skipping blanks and '#' comments.
// Throws input_error prefixed with the 1-based line number.
inline std::vector<InputInstance> read_instances(std::istream& in) {
    std::vector<InputInstance> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string text = line.substr(first, last - first + 1);
        try {
            auto counts = parse_leaf_counts(text);
            (void)parse_caterpillar(std::span<const std::size_t>(counts));
            out.push_back({line_no, std::move(text), std::move(counts)});
        } catch (const input_error& e) {
            throw input_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

enum class Format { Tsv, Json, Dot };

struct ConstructOptions {
    std::uint64_t seed = 0;
    Format format = Format::Tsv;
};

inline int cmd_construct(std::istream& in, std::ostream& out, std::ostream& err,
                         const ConstructOptions& opt) {
    std::vector<InputInstance> instances;
    try {
        instances = read_instances(in);
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    int code = kSuccess;
    for (const InputInstance& inst : instances) {
        try {
            const Caterpillar c = parse_caterpillar(std::span<const std::size_t>(inst.leaf_counts));
            const Construction built = construct(c, opt.seed);
            switch (opt.format) {
                case Format::Tsv:
                    out << "# " << inst.text << '\n';
                    write_tsv(out, built);
                    break;
                case Format::Json: out << construction_to_json(built).dump() << '\n'; break;
                case Format::Dot: write_dot(out, built, inst.text); break;
            }
            const VerificationReport rep = check_weight_classes(built.labeling, built.trace);
            if (!rep.passed()) {
                err << "line " << inst.line_no << ": verification failed:";
                for (const auto& v : rep.violations) err << ' ' << v;
                err << '\n';
                code = std::max<int>(code, kVerificationFailure);
            }
        } catch (const invariant_violation& e) {
            err << "line " << inst.line_no << ": internal invariant violated: " << e.what() << '\n';
            return kInternalError;
        }
    }
    return code;
}

// Accepts either one JSON document (possibly pretty-printed) or JSON Lines.
inline std::vector<json> read_json_documents(std::istream& in) {
    const std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<json> docs;
    if (all.find_first_not_of(" \t\r\n") == std::string::npos) return docs;
    json single = json::parse(all, nullptr, false);
    if (!single.is_discarded()) {
        docs.push_back(std::move(single));
        return docs;
    }
    std::istringstream lines(all);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json doc = json::parse(line, nullptr, false);
        if (doc.is_discarded()) throw schema_error("line " + std::to_string(line_no) + ": invalid JSON");
        docs.push_back(std::move(doc));
    }
    return docs;
}

inline int cmd_verify(std::istream& in, std::ostream& out, std::ostream& err) {
    std::vector<json> docs;
    try {
        docs = read_json_documents(in);
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    int code = kSuccess;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        VerifyDocument doc;
        try {
            doc = parse_verify_document(docs[i]);
        } catch (const input_error& e) {
            err << "document " << i + 1 << ": schema violation: " << e.what() << '\n';
            code = std::max<int>(code, kInputError);
            continue;
        }
        const VerificationReport rep = verify_document(doc);
        out << report_to_json(rep).dump() << '\n';
        if (rep.has("labels_not_bijection")) {
            err << "document " << i + 1 << ": labels_not_bijection\n";
            code = std::max<int>(code, kInputError);
        } else if (!rep.passed()) {
            code = std::max<int>(code, kVerificationFailure);
        }
    }
    return code;
}

struct OracleOptions {
    std::optional<std::size_t> cap;   // falls back to the environment, then the default
    std::optional<bool> count_all;
    unsigned threads = 1;
};

inline int cmd_oracle(std::istream& in, std::ostream& out, std::ostream& err, const OracleOptions& opt) {
    std::vector<InputInstance> instances;
    OracleConfig cfg;
    try {
        instances = read_instances(in);
        cfg.cap = opt.cap ? *opt.cap : oracle_cap_from_env();
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    cfg.count_all = opt.count_all;
    cfg.threads = opt.threads;

    std::vector<Caterpillar> parsed;
    for (const InputInstance& inst : instances) {
        parsed.push_back(parse_caterpillar(std::span<const std::size_t>(inst.leaf_counts)));
        if (parsed.back().edge_count() > cfg.cap) {
            err << "line " << inst.line_no << ": refused: m=" << parsed.back().edge_count()
                << " exceeds oracle cap " << cfg.cap << '\n';
            return kResourceRefusal;
        }
    }
    int code = kSuccess;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        const OracleResult res = exhaustive_search(parsed[i].tree(), cfg);
        json j = oracle_to_json(res);
        j["input"] = instances[i].text;
        out << j.dump() << '\n';
        if (!res.witness) code = std::max<int>(code, kVerificationFailure);
    }
    return code;
}

struct GenOptions {
    std::optional<std::size_t> max_n;  // enumerate mode
    std::size_t count = 0;             // random mode
    std::uint64_t seed = 0;
    std::size_t max_m = 1000;
};

inline int cmd_gen(std::ostream& out, std::ostream& err, const GenOptions& opt) {
    try {
        if (opt.max_n) {
            for_each_caterpillar(*opt.max_n, [&](const Caterpillar& c) { out << format_caterpillar(c) << '\n'; });
        } else {
            RandomCaterpillarStream stream(opt.seed, opt.max_m);
            for (std::size_t i = 0; i < opt.count; ++i) {
                const auto counts = stream.next_leaf_counts();
                for (std::size_t j = 0; j < counts.size(); ++j) out << (j ? " " : "") << counts[j];
                out << '\n';
            }
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kSuccess;
}

struct RunRecord {
    std::string input;
    std::size_t m = 0;
    std::size_t r = 0;
    Label k1 = 0;
    Label k2 = 0;
    std::size_t n_l = 0;
    std::size_t n_h = 0;
    std::uint64_t seed = 0;
    bool antimagic = false;
    std::vector<std::string> violations;
    double wall_time_us = 0;
    std::string internal_error;
};

inline json record_to_json(const RunRecord& r) {
    return {{"input", r.input}, {"m", r.m}, {"r", r.r}, {"k1", r.k1}, {"k2", r.k2},
            {"n_l", r.n_l}, {"n_h", r.n_h}, {"seed", r.seed}, {"antimagic", r.antimagic},
            {"violations", r.violations}, {"wall_time_us", r.wall_time_us}};
}

inline RunRecord run_instance(const std::vector<std::size_t>& counts, std::uint64_t seed) {
    RunRecord rec;
    rec.seed = seed;
    for (std::size_t j = 0; j < counts.size(); ++j) rec.input += (j ? " " : "") + std::to_string(counts[j]);
    const auto start = std::chrono::steady_clock::now();
    try {
        const Caterpillar c = parse_caterpillar(std::span<const std::size_t>(counts));
        rec.m = c.edge_count();
        rec.r = c.leaf_count();
        const Construction built = construct(c, seed);
        const VerificationReport rep = check_weight_classes(built.labeling, built.trace);
        rec.k1 = built.trace.partition.k1;
        rec.k2 = built.trace.partition.k2;
        rec.n_l = built.trace.light_order.size();
        rec.n_h = built.trace.heavy_order.size();
        rec.antimagic = rep.antimagic;
        rec.violations = rep.violations;
        for (const auto& claim : check_claims(c, built.trace))
            if (!claim.holds) rec.violations.push_back(claim.id);
    } catch (const invariant_violation& e) {
        rec.internal_error = e.what();
        rec.violations.push_back("internal_invariant");
    }
    rec.wall_time_us =
        std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

struct StressOptions {
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    std::size_t max_m = 1000;
    unsigned threads = 0;  // 0: hardware concurrency
    bool records = false;
};

// Instance i is the i-th draw of the seeded stream and is constructed with
// seed + i. Records come out in instance order whatever the thread count.
// The stdout summary is deterministic; timing goes to stderr.
inline int cmd_stress(std::ostream& out, std::ostream& err, const StressOptions& opt) {
    std::vector<std::vector<std::size_t>> inputs;
    try {
        if (opt.count > 0) {
            RandomCaterpillarStream stream(opt.seed, opt.max_m);
            inputs.reserve(opt.count);
            for (std::size_t i = 0; i < opt.count; ++i) inputs.push_back(stream.next_leaf_counts());
        }
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    std::vector<RunRecord> records(inputs.size());
    unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, inputs.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++)
            records[i] = run_instance(inputs[i], opt.seed + i);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    std::size_t failures = 0;
    std::size_t internal = 0;
    std::size_t max_m = 0;
    std::size_t total_m = 0;
    double total_us = 0;
    for (const RunRecord& r : records) {
        if (opt.records) out << record_to_json(r).dump() << '\n';
        if (!r.antimagic || !r.violations.empty()) ++failures;
        if (!r.internal_error.empty()) ++internal;
        max_m = std::max(max_m, r.m);
        total_m += r.m;
        total_us += r.wall_time_us;
    }
    json summary = {{"instances", records.size()}, {"seed", opt.seed},      {"max_m", max_m},
                    {"total_m", total_m},          {"failures", failures}, {"internal_errors", internal}};
    out << summary.dump() << '\n';
    err << "mean_wall_time_us " << (records.empty() ? 0.0 : total_us / static_cast<double>(records.size()))
        << '\n';
    if (internal) return kInternalError;
    return failures ? kVerificationFailure : kSuccess;
}

// Opens `path` ("-" or empty for `fallback`) and runs fn(stream).
template <class Fn>
int with_input(const std::string& path, std::istream& fallback, std::ostream& err, Fn&& fn) {
    if (path.empty() || path == "-") return fn(fallback);
    std::ifstream file(path);
    if (!file) {
        err << "error: cannot open " << path << '\n';
        return kInputError;
    }
    return fn(file);
}

inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Antimagic orientations of caterpillars"};
    app.require_subcommand(1);

    std::string input;
    ConstructOptions copt;
    std::string format = "tsv";
    auto* construct_cmd = app.add_subcommand("construct", "Build and verify antimagic orientations");
    construct_cmd->add_option("input", input, "Caterpillar lines (default stdin)");
    construct_cmd->add_option("--seed", copt.seed, "Seed for the random heavy-edge labels");
    construct_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"tsv", "json", "dot"}));

    auto* verify_cmd = app.add_subcommand("verify", "Verify labelings given as JSON");
    verify_cmd->add_option("input", input, "JSON document or JSON Lines (default stdin)");

    OracleOptions oopt;
    std::size_t cap = 0;
    bool count_all = false;
    bool first_witness = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search over orientations and labelings");
    oracle_cmd->add_option("input", input, "Caterpillar lines (default stdin)");
    auto* cap_opt = oracle_cmd->add_option("--cap", cap, "Largest m to search (env ANTIMAGIC_ORACLE_CAP)");
    oracle_cmd->add_flag("--count-all", count_all, "Count every antimagic pair");
    oracle_cmd->add_flag("--first-witness", first_witness, "Stop at the first witness")
        ->excludes("--count-all");
    oracle_cmd->add_option("--threads", oopt.threads, "Worker threads for full counts");

    GenOptions gopt;
    std::size_t max_n = 0;
    auto* gen_cmd = app.add_subcommand("gen", "Emit caterpillars in the canonical text format");
    auto* max_n_opt = gen_cmd->add_option("--max-n", max_n, "Enumerate all caterpillars up to this order");
    gen_cmd->add_option("--count", gopt.count, "Number of random caterpillars")->excludes(max_n_opt);
    gen_cmd->add_option("--seed", gopt.seed, "Random seed");
    gen_cmd->add_option("--max-m", gopt.max_m, "Largest edge count for random caterpillars");

    StressOptions sopt;
    auto* stress_cmd = app.add_subcommand("stress", "Generate, construct and verify random caterpillars");
    stress_cmd->add_option("--count", sopt.count, "Number of instances");
    stress_cmd->add_option("--seed", sopt.seed, "Random seed");
    stress_cmd->add_option("--max-m", sopt.max_m, "Largest edge count");
    stress_cmd->add_option("--threads", sopt.threads, "Worker threads (0: all cores)");
    stress_cmd->add_flag("--records", sopt.records, "Print one JSON record per instance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    if (*construct_cmd) {
        copt.format = format == "json" ? Format::Json : format == "dot" ? Format::Dot : Format::Tsv;
        return with_input(input, in, err, [&](std::istream& s) { return cmd_construct(s, out, err, copt); });
    }
    if (*verify_cmd) return with_input(input, in, err, [&](std::istream& s) { return cmd_verify(s, out, err); });
    if (*oracle_cmd) {
        if (*cap_opt) oopt.cap = cap;
        if (count_all) oopt.count_all = true;
        if (first_witness) oopt.count_all = false;
        return with_input(input, in, err, [&](std::istream& s) { return cmd_oracle(s, out, err, oopt); });
    }
    if (*gen_cmd) {
        if (*max_n_opt) gopt.max_n = max_n;
        return cmd_gen(out, err, gopt);
    }
    return cmd_stress(out, err, sopt);
}

}  // namespace antimagic::cli

#endif  // ANTIMAGIC_CLI_HPP
