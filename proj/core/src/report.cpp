#include "chaoscrypt/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chaoscrypt/io.hpp"

namespace chaoscrypt {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---- spec parsing -----------------------------------------------------------

std::pair<double, double> number_pair(const json& v, const std::string& what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw FormatError(what + " must be a two-element numeric array");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

// ---- CSV ------------------------------------------------------------------

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// RFC 4180 records; quoted fields may hold commas, quotes and newlines.
std::vector<std::vector<std::string>> csv_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        records.push_back(std::move(record));
        record.clear();
        field_started = false;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
        } else {
            field += c;
            field_started = true;
        }
        ++i;
    }
    if (quoted) throw FormatError("report CSV: unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

std::optional<double> parse_optional_double(const std::string& cell, const char* column) {
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
        throw FormatError(std::string("report CSV: bad number in column ") + column + ": '" + cell + "'");
    }
    return v;
}

double parse_double(const std::string& cell, const char* column) {
    const auto v = parse_optional_double(cell, column);
    if (!v) throw FormatError(std::string("report CSV: empty column ") + column);
    return *v;
}

std::string opt_number(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

template <typename T>
std::optional<std::pair<double, double>> range_of(std::span<const AnalysisRow> rows, T member) {
    std::optional<std::pair<double, double>> out;
    for (const auto& row : rows) {
        const auto& v = row.*member;
        if (!v) continue;
        if (!out) {
            out = std::pair{*v, *v};
        } else {
            out->first = std::min(out->first, *v);
            out->second = std::max(out->second, *v);
        }
    }
    return out;
}

template <typename T, typename Fn>
ordered_json or_null(const std::optional<T>& v, Fn to_json) {
    return v ? ordered_json(to_json(*v)) : ordered_json(nullptr);
}

ordered_json range_json(const std::optional<std::pair<double, double>>& r) {
    if (!r) return nullptr;
    return ordered_json::array({r->first, r->second});
}

// ---- per-row analysis --------------------------------------------------------

AnalysisRow run_row(std::size_t position, const RowSpec& spec, MapKind kind,
                    const CipherConfig& cfg, const ReportOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    AnalysisRow row;
    row.index = position + 1;
    row.plaintext = spec.plaintext;
    row.key = spec.key;

    const std::string tag = "row " + std::to_string(row.index) + ": ";
    auto warn = [&](const std::string& msg) {
        row.warnings.push_back(msg);
        if (options.on_warning) options.on_warning(tag + msg);
    };
    auto fail = [&](const std::string& what, const std::exception& e) {
        row.errors.push_back(what + ": " + e.what());
        if (options.on_warning) options.on_warning(tag + what + " failed: " + e.what());
    };
    auto finish = [&] {
        row.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return row;
    };

    KeyDomain domain = spec.domain;
    domain.kind = kind;
    domain.n_modulus = spec.key.params.n_modulus;
    if (domain.a_hi < domain.a_lo || domain.b_hi < domain.b_lo) {
        warn("domain bounds reversed; swapped");
        domain = domain.normalized();
    }
    row.domain = domain;
    try {
        if (spec.key.kind != kind) throw DomainError("key map differs from report map");
        domain.validate();
        validate(spec.key.params);
    } catch (const Error& e) {
        fail("domain", e);
        return finish();
    }
    if (!domain.contains(spec.key)) {
        domain = domain.covering(spec.key);
        warn("key outside domain; domain widened to [" + format_double(domain.a_lo) + " " +
             format_double(domain.b_lo) + "] to [" + format_double(domain.a_hi) + " " +
             format_double(domain.b_hi) + "]");
    }
    row.domain = domain;
    row.key = domain.key_at(domain.snap(spec.key));
    if (row.key.params != spec.key.params) {
        warn("key snapped to grid point [" + format_double(row.key.params.a) + " " +
             format_double(row.key.params.b) + "]");
    }

    const PlainText plain(spec.plaintext.begin(), spec.plaintext.end());
    if (plain.empty()) {
        row.errors.emplace_back("plaintext is empty");
        return finish();
    }

    std::optional<CipherText> ciphertext;
    try {
        ciphertext = encrypt_symbols(plain, row.key, cfg);
        row.ciphertext_hex = to_hex(*ciphertext);
    } catch (const Error& e) {
        fail("encryption", e);
    }
    try {
        row.pt_sensitivity_pct = plaintext_sensitivity(
            plain, row.key, cfg, options.flip_bit.value_or(default_flip_bit(plain.size())));
    } catch (const Error& e) {
        fail("plaintext sensitivity", e);
    }
    try {
        row.key_sensitivity_pct = key_sensitivity(
            plain, row.key, cfg,
            options.key_perturbation.value_or(IncrementPerturbation{domain.increment}));
    } catch (const Error& e) {
        fail("key sensitivity", e);
    }
    try {
        bool all_identifiable = !options.iteration_values.empty();
        for (std::size_t iters : options.iteration_values) {
            const auto scan = identifiability_scan(plain, row.key, domain, cfg, iters,
                                                   options.compare_len, options.scan);
            row.matching_counts.emplace_back(iters, scan.matching_keys.size());
            all_identifiable = all_identifiable && scan.verdict == Identifiability::Identifiable;
        }
        row.identifiable = all_identifiable ? Identifiability::Identifiable
                                            : Identifiability::NonIdentifiable;
    } catch (const Error& e) {
        fail("identifiability", e);
    }
    if (ciphertext) {
        try {
            const std::size_t k = std::min(options.known_prefix_len, plain.size());
            const auto attack = known_plaintext_attack(
                *ciphertext, std::span<const Byte>(plain).first(k), domain, cfg, options.scan);
            row.attack_candidates = attack.candidates.size();
            row.robust_kpa = !attack.isolates(row.key);
        } catch (const Error& e) {
            fail("known-plaintext attack", e);
        }
    }
    return finish();
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ReportSpec parse_report_spec(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed report spec JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string() || !j.contains("rows") ||
        !j["rows"].is_array()) {
        throw FormatError("report spec: expected {\"kind\": string, \"rows\": [...]}");
    }
    ReportSpec spec;
    try {
        spec.kind = parse_map_kind(j["kind"].get<std::string>());
    } catch (const DomainError& e) {
        throw FormatError(std::string("report spec: ") + e.what());
    }
    double n_modulus = 1.0;
    if (j.contains("n_modulus")) {
        if (!j["n_modulus"].is_number()) throw FormatError("report spec: n_modulus must be a number");
        n_modulus = j["n_modulus"].get<double>();
    }
    std::size_t idx = 0;
    for (const auto& r : j["rows"]) {
        const std::string where = "report spec row " + std::to_string(++idx);
        if (!r.is_object() || !r.contains("plaintext") || !r["plaintext"].is_string() ||
            !r.contains("key") || !r.contains("domain") || !r["domain"].is_object()) {
            throw FormatError(where + ": needs plaintext, key and domain");
        }
        RowSpec row;
        row.plaintext = r["plaintext"].get<std::string>();
        const auto [a, b] = number_pair(r["key"], where + " key");
        row.key = Key{spec.kind, MapParams{a, b, n_modulus}};
        const auto& d = r["domain"];
        if (!d.contains("lower") || !d.contains("upper")) {
            throw FormatError(where + ": domain needs lower and upper");
        }
        const auto [a_lo, b_lo] = number_pair(d["lower"], where + " domain.lower");
        const auto [a_hi, b_hi] = number_pair(d["upper"], where + " domain.upper");
        row.domain = KeyDomain{spec.kind, a_lo, b_lo, a_hi, b_hi, 1e-4, n_modulus};
        if (d.contains("increment")) {
            if (!d["increment"].is_number()) throw FormatError(where + ": increment must be a number");
            row.domain.increment = d["increment"].get<double>();
        }
        if (r.contains("note")) {
            if (!r["note"].is_string()) throw FormatError(where + ": note must be a string");
            row.note = r["note"].get<std::string>();
        }
        spec.rows.push_back(std::move(row));
    }
    return spec;
}

std::string serialize_report_spec(const ReportSpec& spec) {
    ordered_json j;
    j["kind"] = std::string(to_string(spec.kind));
    j["n_modulus"] = spec.rows.empty() ? 1.0 : spec.rows.front().key.params.n_modulus;
    j["rows"] = ordered_json::array();
    for (const auto& r : spec.rows) {
        ordered_json row;
        row["plaintext"] = r.plaintext;
        row["key"] = {r.key.params.a, r.key.params.b};
        row["domain"] = {{"lower", {r.domain.a_lo, r.domain.b_lo}},
                         {"upper", {r.domain.a_hi, r.domain.b_hi}},
                         {"increment", r.domain.increment}};
        if (!r.note.empty()) row["note"] = r.note;
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2);
}

std::vector<AnalysisRow> analysis_report(const ReportSpec& spec, const CipherConfig& cfg,
                                         const ReportOptions& options) {
    cfg.validate();
    std::vector<AnalysisRow> rows;
    rows.reserve(spec.rows.size());
    for (std::size_t i = 0; i < spec.rows.size(); ++i) {
        rows.push_back(run_row(i, spec.rows[i], spec.kind, cfg, options));
        if (options.on_row) options.on_row(rows.back(), spec.rows.size());
    }
    return rows;
}

void write_report_csv(std::ostream& out, std::span<const AnalysisRow> rows) {
    out << kReportCsvHeader << '\n';
    for (const auto& r : rows) {
        const auto bfs = r.brute_force_secret();
        out << r.index << ',' << csv_field(r.plaintext) << ',' << format_double(r.key.params.a)
            << ',' << format_double(r.key.params.b) << ',' << r.ciphertext_hex << ','
            << opt_number(r.pt_sensitivity_pct) << ',' << opt_number(r.key_sensitivity_pct) << ','
            << format_double(r.domain.a_lo) << ',' << format_double(r.domain.b_lo) << ','
            << format_double(r.domain.a_hi) << ',' << format_double(r.domain.b_hi) << ','
            << format_double(r.domain.increment) << ','
            << (r.identifiable ? to_string(*r.identifiable) : "") << ','
            << (r.robust_kpa ? (*r.robust_kpa ? "R" : "NR") : "") << ','
            << (bfs ? (*bfs ? "YES" : "NO") : "") << '\n';
    }
}

std::vector<AnalysisRow> parse_report_csv(std::string_view text, MapKind kind) {
    auto records = csv_records(text);
    if (records.empty()) throw FormatError("report CSV: missing header");
    std::string header;
    for (std::size_t i = 0; i < records.front().size(); ++i) {
        if (i) header += ',';
        header += records.front()[i];
    }
    if (header != kReportCsvHeader) throw FormatError("report CSV: unexpected header '" + header + "'");

    std::vector<AnalysisRow> rows;
    for (std::size_t n = 1; n < records.size(); ++n) {
        const auto& f = records[n];
        if (f.size() == 1 && f[0].empty()) continue;
        if (f.size() != 15) {
            throw FormatError("report CSV: record " + std::to_string(n) + " has " +
                              std::to_string(f.size()) + " fields, expected 15");
        }
        AnalysisRow row;
        const auto index = parse_double(f[0], "index");
        if (index < 0 || index != std::floor(index)) throw FormatError("report CSV: bad index");
        row.index = static_cast<std::size_t>(index);
        row.plaintext = f[1];
        row.key = Key{kind, MapParams{parse_double(f[2], "key_a"), parse_double(f[3], "key_b"), 1.0}};
        row.ciphertext_hex = f[4];
        if (!f[4].empty()) (void)from_hex(f[4]);
        row.pt_sensitivity_pct = parse_optional_double(f[5], "pt_sensitivity_pct");
        row.key_sensitivity_pct = parse_optional_double(f[6], "key_sensitivity_pct");
        row.domain = KeyDomain{kind,
                               parse_double(f[7], "domain_lo_a"),
                               parse_double(f[8], "domain_lo_b"),
                               parse_double(f[9], "domain_hi_a"),
                               parse_double(f[10], "domain_hi_b"),
                               parse_double(f[11], "increment"),
                               1.0};
        if (f[12] == "I") {
            row.identifiable = Identifiability::Identifiable;
        } else if (f[12] == "NI") {
            row.identifiable = Identifiability::NonIdentifiable;
        } else if (!f[12].empty()) {
            throw FormatError("report CSV: identifiable must be I or NI");
        }
        if (f[13] == "R" || f[13] == "NR") {
            row.robust_kpa = f[13] == "R";
        } else if (!f[13].empty()) {
            throw FormatError("report CSV: robust_kpa must be R or NR");
        }
        const auto bfs = row.brute_force_secret();
        const std::string expected = bfs ? (*bfs ? "YES" : "NO") : "";
        if (f[14] != expected) {
            throw FormatError("report CSV: brute_force_secret '" + f[14] +
                              "' disagrees with identifiable on record " + std::to_string(n));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string report_summary_json(MapKind kind, std::span<const AnalysisRow> rows) {
    ordered_json j;
    j["kind"] = std::string(to_string(kind));
    j["arnold_interpretation"] = std::string(kArnoldInterpretation);
    j["row_count"] = rows.size();
    double total = 0.0;
    std::size_t failed = 0;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json row;
        row["index"] = r.index;
        row["key"] = {r.key.params.a, r.key.params.b};
        row["domain"] = {{"lower", {r.domain.a_lo, r.domain.b_lo}},
                         {"upper", {r.domain.a_hi, r.domain.b_hi}},
                         {"increment", r.domain.increment},
                         {"grid_size", r.errors.empty() ? r.domain.size() : 0}};
        const auto same = [](auto v) { return v; };
        row["pt_sensitivity_pct"] = or_null(r.pt_sensitivity_pct, same);
        row["key_sensitivity_pct"] = or_null(r.key_sensitivity_pct, same);
        row["identifiable"] = or_null(r.identifiable, [](auto v) { return to_string(v); });
        ordered_json counts = ordered_json::object();
        for (const auto& [iters, n] : r.matching_counts) counts[std::to_string(iters)] = n;
        row["matching_keys"] = counts;
        row["robust_kpa"] = or_null(r.robust_kpa, [](bool v) { return v ? "R" : "NR"; });
        row["attack_candidates"] = or_null(r.attack_candidates, same);
        row["brute_force_secret"] =
            or_null(r.brute_force_secret(), [](bool v) { return v ? "YES" : "NO"; });
        row["warnings"] = r.warnings;
        row["errors"] = r.errors;
        row["elapsed_seconds"] = r.elapsed_seconds;
        j["rows"].push_back(std::move(row));
        total += r.elapsed_seconds;
        failed += r.errors.empty() ? 0 : 1;
    }
    j["rows_with_errors"] = failed;
    j["pt_sensitivity_range"] = range_json(range_of(rows, &AnalysisRow::pt_sensitivity_pct));
    j["key_sensitivity_range"] = range_json(range_of(rows, &AnalysisRow::key_sensitivity_pct));
    j["total_seconds"] = total;
    return j.dump(2);
}

CipherComparison summarize_report(MapKind kind, std::span<const AnalysisRow> rows,
                                  double resolution) {
    CipherComparison c;
    c.kind = kind;
    c.key_space = key_space_size(reference_key_space(kind), resolution);
    c.reference_key_space = reference_key_space_size(kind);
    c.key_space_discrepancy = std::abs(std::log10(c.key_space.total() / c.reference_key_space)) > 0.5;
    c.pt_sensitivity_range = range_of(rows, &AnalysisRow::pt_sensitivity_pct);
    c.key_sensitivity_range = range_of(rows, &AnalysisRow::key_sensitivity_pct);
    c.identifiable_key = std::any_of(rows.begin(), rows.end(), [](const AnalysisRow& r) {
        return r.identifiable == Identifiability::Identifiable;
    });
    c.robust_kpa = std::any_of(rows.begin(), rows.end(),
                               [](const AnalysisRow& r) { return r.robust_kpa == true; });
    c.key_space_exceeds_2_100 = c.key_space.exceeds_power_of_two(100);
    return c;
}

std::vector<CipherComparison> compare_ciphers(std::span<const AnalysisRow> arnold,
                                              std::span<const AnalysisRow> duffing,
                                              double resolution) {
    if (arnold.empty() || duffing.empty()) throw DomainError("compare_ciphers: empty report");
    return {summarize_report(MapKind::Duffing, duffing, resolution),
            summarize_report(MapKind::ArnoldCat, arnold, resolution)};
}

void write_comparison_csv(std::ostream& out, std::span<const CipherComparison> table) {
    auto yes_no = [](bool v) { return v ? "Yes" : "No"; };
    auto lo = [](const auto& r) { return r ? format_double(r->first) : std::string(); };
    auto hi = [](const auto& r) { return r ? format_double(r->second) : std::string(); };
    out << kComparisonCsvHeader << '\n';
    for (const auto& c : table) {
        std::ostringstream size;
        size.precision(3);
        size << c.key_space.total();
        out << to_string(c.kind) << ',' << size.str() << ',' << format_double(c.reference_key_space)
            << ',' << yes_no(c.key_space_discrepancy) << ',' << lo(c.pt_sensitivity_range) << ','
            << hi(c.pt_sensitivity_range) << ',' << lo(c.key_sensitivity_range) << ','
            << hi(c.key_sensitivity_range) << ',' << yes_no(c.identifiable_key) << ','
            << yes_no(c.robust_kpa) << ',' << yes_no(c.key_space_exceeds_2_100) << '\n';
    }
}

}  // namespace chaoscrypt
