#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chaoscrypt/chaoscrypt.hpp"

namespace chaoscrypt::cli {

namespace {

namespace fs = std::filesystem;

/// Key given on the command line but outside the cipher's key space.
class KeyOutOfDomain : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t min_count,
                                  std::size_t max_count, const char* flag) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string_view piece(text.data() + start, comma - start);
        double v = 0.0;
        const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || res.ec != std::errc{} || res.ptr != piece.data() + piece.size()) {
            throw UsageError(std::string(flag) + ": '" + text + "' is not a comma-separated number list");
        }
        values.push_back(v);
        start = comma + 1;
    }
    if (values.size() < min_count || values.size() > max_count) {
        throw UsageError(std::string(flag) + ": expected " + std::to_string(min_count) +
                         (min_count == max_count ? "" : "-" + std::to_string(max_count)) +
                         " numbers, got " + std::to_string(values.size()));
    }
    return values;
}

/// A key JSON file path, or inline `kind:a,b[,N]`.
Key resolve_key(const std::string& spec) {
    if (fs::exists(spec)) return load_key_file(spec);
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw IoError("key file '" + spec + "' not found");
    Key key;
    try {
        key.kind = parse_map_kind(spec.substr(0, colon));
    } catch (const DomainError& e) {
        throw UsageError(std::string("--key: ") + e.what());
    }
    const auto v = parse_numbers(spec.substr(colon + 1), 2, 3, "--key");
    key.params = MapParams{v[0], v[1], v.size() == 3 ? v[2] : 1.0};
    try {
        validate(key.params);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--key: ") + e.what());
    }
    return key;
}

KeyDomain resolve_domain(MapKind kind, const std::string& text, double increment, double n_modulus) {
    const auto v = parse_numbers(text, 4, 4, "--domain");
    KeyDomain d{kind, v[0], v[1], v[2], v[3], increment, n_modulus};
    try {
        d.validate();
    } catch (const DomainError& e) {
        throw UsageError(std::string("--domain: ") + e.what());
    }
    return d;
}

/// Cipher parameters shared by every command that runs the cipher.
struct ConfigFlags {
    std::string path;
    CipherConfig defaults;
    std::size_t n1 = defaults.n1;
    std::size_t n2 = defaults.n2;
    double quant_scale = defaults.quant_scale;
    double reinject_gain = defaults.reinject_gain;
    std::string init;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", path, "Cipher config JSON (flags below override it)");
        cmd->add_option("--n1", n1, "Map iterations before the first mix")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--n2", n2, "Map iterations before the second mix")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--quant-scale", quant_scale, "State quantization scale")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--reinject-gain", reinject_gain, "Ciphertext feedback gain")
            ->capture_default_str();
        cmd->add_option("--init", init,
                        "Initial state x,y (default: arnold 0.5,0.06; duffing -0.04,0.2)");
        cmd_ = cmd;
    }

    CipherConfig resolve() const {
        CipherConfig cfg = path.empty() ? CipherConfig{} : load_config_file(path);
        auto given = [&](const char* name) { return cmd_->count(name) > 0; };
        if (given("--n1")) cfg.n1 = n1;
        if (given("--n2")) cfg.n2 = n2;
        if (given("--quant-scale")) cfg.quant_scale = quant_scale;
        if (given("--reinject-gain")) cfg.reinject_gain = reinject_gain;
        if (!init.empty()) {
            const auto v = parse_numbers(init, 2, 2, "--init");
            cfg.initial_state = State{v[0], v[1]};
        }
        try {
            cfg.validate();
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }

private:
    CLI::App* cmd_ = nullptr;
};

struct PlaintextFlags {
    std::string text;
    std::string file;

    void attach(CLI::App* cmd) {
        auto* t = cmd->add_option("--text", text, "Plaintext given inline (UTF-8 bytes)");
        auto* f = cmd->add_option("--plaintext-file", file, "Plaintext read from a file");
        t->excludes(f);
    }

    PlainText resolve() const {
        if (!file.empty()) {
            const std::string data = read_text_file(file);
            return PlainText(data.begin(), data.end());
        }
        return PlainText(text.begin(), text.end());
    }
};

void print_progress(std::ostream& err, const char* label, std::size_t done, std::size_t total) {
    err << "chaoscrypt: " << label << ' ' << done << '/' << total << '\n';
}

/// Reports at most ~10 progress lines per scan.
ScanOptions scan_options(unsigned threads, std::ostream& err, const char* label, bool quiet) {
    ScanOptions opts;
    opts.threads = threads;
    if (!quiet) {
        auto next = std::make_shared<std::size_t>(0);
        opts.progress = [&err, label, next](std::size_t done, std::size_t total) {
            if (done >= *next || done == total) {
                print_progress(err, label, done, total);
                *next = done + std::max<std::size_t>(1, total / 10);
            }
        };
    }
    return opts;
}

void write_output(const std::string& path, std::ostream& out, const std::string& content) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    file << content;
    if (!file) throw IoError("write to '" + path + "' failed");
}

std::string key_line(const Key& k) {
    return format_double(k.params.a) + " " + format_double(k.params.b);
}

void warn(std::ostream& err, std::string_view msg) {
    err << "chaoscrypt: warning: " << msg << '\n';
}

KeyDomain domain_covering(const KeyDomain& domain, const Key& key, std::ostream& err) {
    if (domain.contains(key)) return domain;
    const KeyDomain wide = domain.covering(key);
    warn(err, "key lies outside --domain; scanning the widened domain [" +
                  format_double(wide.a_lo) + "," + format_double(wide.b_lo) + "," +
                  format_double(wide.a_hi) + "," + format_double(wide.b_hi) + "]");
    return wide;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Message-embedded chaotic stream cipher (Arnold cat / Duffing maps) and its "
                 "cryptanalysis harness",
                 "chaoscrypt"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("chaoscrypt ") + "0.1.0");

    // encrypt / decrypt
    struct {
        std::string in, out, key;
        bool any_key = false;
        ConfigFlags config;
    } enc, dec;
    auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt a file to lowercase hex ciphertext");
    auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a hex ciphertext file");
    for (auto [cmd, o] : {std::pair{encrypt_cmd, &enc}, std::pair{decrypt_cmd, &dec}}) {
        cmd->add_option("--in", o->in, "Input file")->required();
        cmd->add_option("--out", o->out, "Output file")->required();
        cmd->add_option("--key", o->key, "Key JSON file, or inline kind:a,b[,N]")->required();
        cmd->add_flag("--any-key", o->any_key,
                      "Accept keys outside the cipher's key space (arnold [-5,0.4]..[-0.9,1.5], "
                      "duffing [1.8,-0.59]..[2.9,0.2])");
        o->config.attach(cmd);
    }

    // keygen
    std::string kg_kind, kg_domain, kg_out;
    double kg_increment = 1e-4;
    double kg_modulus = 1.0;
    std::optional<std::uint64_t> kg_seed;
    auto* keygen_cmd = app.add_subcommand("keygen", "Draw a key uniformly from a domain grid");
    keygen_cmd->add_option("--kind", kg_kind, "arnold | duffing")->required();
    keygen_cmd->add_option("--domain", kg_domain,
                           "a_lo,b_lo,a_hi,b_hi (default: the cipher's key space)");
    keygen_cmd->add_option("--increment", kg_increment, "Grid increment")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    keygen_cmd->add_option("--n-modulus", kg_modulus, "Arnold modulus N")->capture_default_str();
    keygen_cmd->add_option("--seed", kg_seed, "RNG seed; seeded runs are reproducible");
    keygen_cmd->add_option("--out", kg_out, "Output key file (default: stdout)");

    // trajectory
    std::string tr_kind, tr_params, tr_init, tr_out;
    std::size_t tr_n = 1000;
    auto* trajectory_cmd = app.add_subcommand("trajectory", "Emit an orbit as k,x,y CSV");
    trajectory_cmd->add_option("--kind", tr_kind, "arnold | duffing")->required();
    trajectory_cmd->add_option("--params", tr_params, "a,b[,N]")->required();
    trajectory_cmd->add_option("--init", tr_init,
                               "x,y (default: arnold 0.5,0.06; duffing -0.04,0.2)");
    trajectory_cmd->add_option("--n", tr_n, "Number of steps")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    trajectory_cmd->add_option("--out", tr_out, "Output CSV (default: stdout)");

    // sensitivity
    PlaintextFlags se_text;
    std::string se_key, se_mode = "pt", se_bitflip;
    double se_delta = 1e-4;
    std::optional<std::size_t> se_flip_bit;
    ConfigFlags se_config;
    auto* sensitivity_cmd =
        app.add_subcommand("sensitivity", "Plaintext or key sensitivity, in percent of flipped bits");
    se_text.attach(sensitivity_cmd);
    sensitivity_cmd->add_option("--key", se_key, "Key JSON file, or inline kind:a,b[,N]")->required();
    sensitivity_cmd->add_option("--mode", se_mode, "pt | key")
        ->capture_default_str()
        ->check(CLI::IsMember({"pt", "key"}));
    sensitivity_cmd->add_option("--delta", se_delta, "Key mode: increment added to a")
        ->capture_default_str();
    sensitivity_cmd->add_option("--bitflip", se_bitflip,
                                "Key mode: flip bit B of component C (0=a, 1=b) instead, as C:B");
    sensitivity_cmd->add_option("--flip-bit", se_flip_bit,
                                "Pt mode: plaintext bit to flip (default: LSB of the last byte)");
    se_config.attach(sensitivity_cmd);

    // identify
    PlaintextFlags id_text;
    std::string id_key, id_domain;
    double id_increment = 1e-4;
    std::size_t id_iters = 3;
    std::optional<std::size_t> id_compare;
    unsigned id_threads = 0;
    bool id_json = false, id_quiet = false;
    ConfigFlags id_config;
    auto* identify_cmd = app.add_subcommand("identify", "Output-equality identifiability scan");
    id_text.attach(identify_cmd);
    identify_cmd->add_option("--key", id_key, "True key: JSON file or inline kind:a,b[,N]")->required();
    identify_cmd->add_option("--domain", id_domain, "a_lo,b_lo,a_hi,b_hi")->required();
    identify_cmd->add_option("--increment", id_increment, "Grid increment")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    identify_cmd->add_option("--iters", id_iters, "Iteration value (sets n1 = n2)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    identify_cmd->add_option("--compare-len", id_compare,
                             "Symbols compared (default: min(|plaintext|, 8))");
    identify_cmd->add_option("--threads", id_threads, "Worker threads (0: CHAOSCRYPT_THREADS or all cores)")
        ->capture_default_str();
    identify_cmd->add_flag("--json", id_json, "Print a JSON summary instead of text");
    identify_cmd->add_flag("--quiet", id_quiet, "No progress on stderr");
    id_config.attach(identify_cmd);

    // attack
    std::string at_cipher, at_prefix, at_kind, at_domain;
    double at_increment = 1e-4;
    double at_modulus = 1.0;
    unsigned at_threads = 0;
    bool at_json = false, at_quiet = false;
    ConfigFlags at_config;
    auto* attack_cmd = app.add_subcommand("attack", "Known-plaintext key search over a grid");
    attack_cmd->add_option("--cipher", at_cipher, "Hex ciphertext file")
        ->required();
    attack_cmd->add_option("--known-prefix", at_prefix, "Known leading plaintext")->required();
    attack_cmd->add_option("--kind", at_kind, "arnold | duffing")->required();
    attack_cmd->add_option("--domain", at_domain, "a_lo,b_lo,a_hi,b_hi")->required();
    attack_cmd->add_option("--increment", at_increment, "Grid increment")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    attack_cmd->add_option("--n-modulus", at_modulus, "Arnold modulus N")->capture_default_str();
    attack_cmd->add_option("--threads", at_threads, "Worker threads (0: CHAOSCRYPT_THREADS or all cores)")
        ->capture_default_str();
    attack_cmd->add_flag("--json", at_json, "Print a JSON summary instead of text");
    attack_cmd->add_flag("--quiet", at_quiet, "No progress on stderr");
    at_config.attach(attack_cmd);

    // report
    std::string rp_spec, rp_out, rp_json;
    std::vector<std::size_t> rp_iters{2, 3};
    std::optional<std::size_t> rp_compare;
    std::size_t rp_prefix = 2;
    unsigned rp_threads = 0;
    bool rp_quiet = false;
    ConfigFlags rp_config;
    auto* report_cmd = app.add_subcommand("report", "Run every analysis over a row spec; write the table CSV");
    report_cmd->add_option("--spec", rp_spec, "Row spec JSON")->required();
    report_cmd->add_option("--out", rp_out, "Table CSV (default: stdout)");
    report_cmd->add_option("--json", rp_json, "Also write a JSON run summary here");
    report_cmd->add_option("--iters", rp_iters, "Identifiability iteration values")
        ->capture_default_str()
        ->delimiter(',');
    report_cmd->add_option("--compare-len", rp_compare,
                           "Identifiability symbols compared (default: min(|plaintext|, 8))");
    report_cmd->add_option("--known-prefix-len", rp_prefix, "Known-plaintext attack prefix length")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    report_cmd->add_option("--threads", rp_threads, "Worker threads (0: CHAOSCRYPT_THREADS or all cores)")
        ->capture_default_str();
    report_cmd->add_flag("--quiet", rp_quiet, "No progress on stderr");
    rp_config.attach(report_cmd);

    // compare
    std::string cp_arnold, cp_duffing, cp_out;
    double cp_resolution = kReferenceKeySpaceResolution;
    auto* compare_cmd = app.add_subcommand("compare", "Summarize two report CSVs side by side");
    compare_cmd->add_option("--arnold", cp_arnold, "Arnold report CSV")
        ->required();
    compare_cmd->add_option("--duffing", cp_duffing, "Duffing report CSV")
        ->required();
    compare_cmd->add_option("--resolution", cp_resolution, "Key-space counting resolution")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    compare_cmd->add_option("--out", cp_out, "Output CSV (default: stdout)");

    auto fail = [&](int code, std::string_view category, std::string message) {
        std::replace(message.begin(), message.end(), '\n', ' ');
        err << "chaoscrypt: error: " << category << ": " << message << '\n';
        return code;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail(kUsage, "usage", e.what());
    }

    try {
        if (*encrypt_cmd || *decrypt_cmd) {
            const bool encrypting = static_cast<bool>(*encrypt_cmd);
            auto& o = encrypting ? enc : dec;
            const Key key = resolve_key(o.key);
            if (!o.any_key && !reference_key_space(key.kind).contains(key)) {
                const auto ks = reference_key_space(key.kind);
                throw KeyOutOfDomain("key [" + key_line(key) + "] is outside the " +
                                     std::string(to_string(key.kind)) + " key space [" +
                                     format_double(ks.a_lo) + " " + format_double(ks.b_lo) + "] to [" +
                                     format_double(ks.a_hi) + " " + format_double(ks.b_hi) +
                                     "]; pass --any-key to use it anyway");
            }
            const CipherConfig cfg = o.config.resolve();
            if (encrypting) {
                encrypt_file(o.in, o.out, key, cfg);
            } else {
                decrypt_file(o.in, o.out, key, cfg);
            }
            return kOk;
        }

        if (*keygen_cmd) {
            const MapKind kind = parse_map_kind(kg_kind);
            KeyDomain domain = kg_domain.empty()
                                   ? reference_key_space(kind)
                                   : resolve_domain(kind, kg_domain, kg_increment, kg_modulus);
            domain.increment = kg_increment;
            domain.n_modulus = kg_modulus;
            std::mt19937_64 rng(kg_seed ? *kg_seed : std::random_device{}());
            std::uniform_int_distribution<std::size_t> pick(0, domain.size() - 1);
            const Key key = domain.key_at(pick(rng));
            write_output(kg_out, out, serialize_key(key) + "\n");
            return kOk;
        }

        if (*trajectory_cmd) {
            const MapKind kind = parse_map_kind(tr_kind);
            const auto p = parse_numbers(tr_params, 2, 3, "--params");
            const MapParams params{p[0], p[1], p.size() == 3 ? p[2] : 1.0};
            State s0 = default_initial_state(kind);
            if (!tr_init.empty()) {
                const auto v = parse_numbers(tr_init, 2, 2, "--init");
                s0 = State{v[0], v[1]};
            }
            std::ostringstream csv;
            try {
                const auto points = trajectory(kind, s0, params, tr_n);
                write_trajectory_csv(csv, points);
            } catch (const TrajectoryDivergence& e) {
                write_trajectory_csv(csv, e.prefix());
                write_output(tr_out, out, csv.str());
                throw;
            }
            write_output(tr_out, out, csv.str());
            return kOk;
        }

        if (*sensitivity_cmd) {
            const PlainText plain = se_text.resolve();
            const Key key = resolve_key(se_key);
            const CipherConfig cfg = se_config.resolve();
            double pct = 0.0;
            if (se_mode == "pt") {
                pct = plaintext_sensitivity(plain, key, cfg,
                                            se_flip_bit.value_or(default_flip_bit(plain.size())));
            } else if (!se_bitflip.empty()) {
                std::string pair = se_bitflip;
                std::replace(pair.begin(), pair.end(), ':', ',');
                const auto v = parse_numbers(pair, 2, 2, "--bitflip");
                pct = key_sensitivity(plain, key, cfg,
                                      BitFlipPerturbation{static_cast<int>(v[0]), static_cast<int>(v[1])});
            } else {
                pct = key_sensitivity(plain, key, cfg, IncrementPerturbation{se_delta});
            }
            out << std::setprecision(6) << std::fixed << pct << '\n';
            return kOk;
        }

        if (*identify_cmd) {
            const PlainText plain = id_text.resolve();
            const Key key = resolve_key(id_key);
            const CipherConfig cfg = id_config.resolve();
            const KeyDomain domain = domain_covering(
                resolve_domain(key.kind, id_domain, id_increment, key.params.n_modulus), key, err);
            const auto started = std::chrono::steady_clock::now();
            const auto result = identifiability_scan(plain, key, domain, cfg, id_iters, id_compare,
                                                     scan_options(id_threads, err, "identify", id_quiet));
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            if (!id_quiet) err << "chaoscrypt: identify finished in " << secs << " s\n";
            if (id_json) {
                nlohmann::ordered_json j;
                j["verdict"] = std::string(to_string(result.verdict));
                j["reference_key"] = {result.reference_key.params.a, result.reference_key.params.b};
                j["matching"] = result.matching_keys.size();
                j["grid_size"] = result.grid_size;
                j["diverged"] = result.diverged;
                j["iterations"] = id_iters;
                j["seconds"] = secs;
                auto keys = nlohmann::ordered_json::array();
                for (const auto& k : result.matching_keys) keys.push_back({k.params.a, k.params.b});
                j["matching_keys"] = std::move(keys);
                out << j.dump() << '\n';
            } else {
                out << to_string(result.verdict) << " matching=" << result.matching_keys.size()
                    << " grid=" << result.grid_size << " diverged=" << result.diverged << '\n';
            }
            return kOk;
        }

        if (*attack_cmd) {
            const MapKind kind = parse_map_kind(at_kind);
            const CipherText cipher = from_hex(read_text_file(at_cipher));
            const PlainText prefix(at_prefix.begin(), at_prefix.end());
            const CipherConfig cfg = at_config.resolve();
            const KeyDomain domain = resolve_domain(kind, at_domain, at_increment, at_modulus);
            const auto started = std::chrono::steady_clock::now();
            const auto result = known_plaintext_attack(cipher, prefix, domain, cfg,
                                                       scan_options(at_threads, err, "attack", at_quiet));
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            if (!at_quiet) err << "chaoscrypt: attack finished in " << secs << " s\n";
            if (at_json) {
                nlohmann::ordered_json j;
                auto keys = nlohmann::ordered_json::array();
                for (const auto& k : result.candidates) keys.push_back({k.params.a, k.params.b});
                j["candidates"] = std::move(keys);
                j["recovered"] = result.recovered
                                     ? nlohmann::ordered_json{result.recovered->params.a,
                                                              result.recovered->params.b}
                                     : nlohmann::ordered_json(nullptr);
                j["robust"] = result.robust ? "R" : "NR";
                j["grid_size"] = result.grid_size;
                j["diverged"] = result.diverged;
                j["seconds"] = secs;
                out << j.dump() << '\n';
            } else {
                for (const auto& k : result.candidates) out << "candidate " << key_line(k) << '\n';
                if (result.recovered) out << "recovered " << key_line(*result.recovered) << '\n';
                out << "candidates=" << result.candidates.size() << " grid=" << result.grid_size
                    << " robust=" << (result.robust ? "R" : "NR") << '\n';
            }
            return kOk;
        }

        if (*report_cmd) {
            const ReportSpec spec = parse_report_spec(read_text_file(rp_spec));
            const CipherConfig cfg = rp_config.resolve();
            ReportOptions opts;
            opts.iteration_values = rp_iters;
            opts.compare_len = rp_compare;
            opts.known_prefix_len = rp_prefix;
            opts.scan.threads = rp_threads;
            opts.on_warning = [&](std::string_view msg) { warn(err, msg); };
            if (!rp_quiet) {
                opts.on_row = [&](const AnalysisRow& row, std::size_t total) {
                    err << "chaoscrypt: report row " << row.index << '/' << total << " done in "
                        << row.elapsed_seconds << " s\n";
                };
            }
            const auto rows = analysis_report(spec, cfg, opts);
            std::ostringstream csv;
            write_report_csv(csv, rows);
            write_output(rp_out, out, csv.str());
            if (!rp_json.empty()) write_output(rp_json, out, report_summary_json(spec.kind, rows) + "\n");
            return kOk;
        }

        if (*compare_cmd) {
            const auto arnold = parse_report_csv(read_text_file(cp_arnold), MapKind::ArnoldCat);
            const auto duffing = parse_report_csv(read_text_file(cp_duffing), MapKind::Duffing);
            const auto table = compare_ciphers(arnold, duffing, cp_resolution);
            for (const auto& c : table) {
                if (c.key_space_discrepancy) {
                    warn(err, std::string(to_string(c.kind)) + " key space: computed " +
                                  format_double(c.key_space.total()) + " vs reference " +
                                  format_double(c.reference_key_space) + " (flagged discrepancy)");
                }
            }
            std::ostringstream csv;
            write_comparison_csv(csv, table);
            write_output(cp_out, out, csv.str());
            return kOk;
        }
    } catch (const KeyOutOfDomain& e) {
        return fail(kKeyOutOfDomain, "key-out-of-domain", e.what());
    } catch (const UsageError& e) {
        return fail(kUsage, "usage", e.what());
    } catch (const FormatError& e) {
        return fail(kMalformed, "malformed-input", e.what());
    } catch (const IoError& e) {
        return fail(kIo, "io", e.what());
    } catch (const DivergenceError& e) {
        return fail(kDivergence, "divergence", e.what());
    } catch (const DomainError& e) {
        return fail(kUsage, "usage", e.what());
    } catch (const std::exception& e) {
        return fail(kInternal, "internal", e.what());
    }
    return fail(kUsage, "usage", "no command given");
}

}  // namespace chaoscrypt::cli
