#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chaoscrypt/analysis.hpp"

namespace chaoscrypt {

struct AnalysisRow;

/// One requested table row: a plaintext, its key and the domain scanned around it.
struct RowSpec {
    std::string plaintext;
    Key key;
    KeyDomain domain;
    std::string note;
};

struct ReportSpec {
    MapKind kind = MapKind::ArnoldCat;
    std::vector<RowSpec> rows;
};

/// JSON: {"kind": "arnold", "n_modulus": 1,
///        "rows": [{"plaintext": "...", "key": [a, b],
///                  "domain": {"lower": [a, b], "upper": [a, b], "increment": 0.0001},
///                  "note": "..."}]}
/// Domains are taken as written; reversed bounds are fixed up when the report runs.
ReportSpec parse_report_spec(std::string_view json_text);
std::string serialize_report_spec(const ReportSpec& spec);

struct ReportOptions {
    /// Identifiability is scanned at each value; the row is "I" only if
    /// every scan is Identifiable.
    std::vector<std::size_t> iteration_values{2, 3};
    std::optional<std::size_t> compare_len;
    std::size_t known_prefix_len = 2;
    /// Unset: increment `a` by the row domain's increment.
    std::optional<KeyPerturbation> key_perturbation;
    /// Unset: default_flip_bit(|plaintext|).
    std::optional<std::size_t> flip_bit;
    ScanOptions scan;
    /// Receives one line per warning, prefixed with the row index.
    std::function<void(std::string_view)> on_warning;
    /// Called after each row completes, with the total row count.
    std::function<void(const AnalysisRow&, std::size_t)> on_row;
};

struct AnalysisRow {
    std::size_t index = 0;  ///< 1-based, in spec order
    std::string plaintext;
    Key key;  ///< the analyzed key (the spec key snapped onto the domain grid)
    std::string ciphertext_hex;
    std::optional<double> pt_sensitivity_pct;
    std::optional<double> key_sensitivity_pct;
    KeyDomain domain;  ///< the domain actually scanned
    std::optional<Identifiability> identifiable;
    std::optional<bool> robust_kpa;

    std::vector<std::pair<std::size_t, std::size_t>> matching_counts;  ///< (iters, matches)
    std::optional<std::size_t> attack_candidates;
    std::vector<std::string> warnings;
    std::vector<std::string> errors;
    double elapsed_seconds = 0.0;

    /// A key can serve as a secret against brute force iff it is identifiable.
    std::optional<bool> brute_force_secret() const {
        if (!identifiable) return std::nullopt;
        return *identifiable == Identifiability::Identifiable;
    }
};

/// Runs plaintext sensitivity, key sensitivity, identifiability and the
/// known-plaintext attack for every row. Failures are recorded on the row
/// and the run continues.
std::vector<AnalysisRow> analysis_report(const ReportSpec& spec, const CipherConfig& cfg,
                                         const ReportOptions& options = {});

inline constexpr std::string_view kReportCsvHeader =
    "index,plaintext,key_a,key_b,ciphertext_hex,pt_sensitivity_pct,key_sensitivity_pct,"
    "domain_lo_a,domain_lo_b,domain_hi_a,domain_hi_b,increment,identifiable,robust_kpa,"
    "brute_force_secret";

void write_report_csv(std::ostream& out, std::span<const AnalysisRow> rows);
/// Inverse of write_report_csv. Rows get `kind`, which the CSV does not carry.
std::vector<AnalysisRow> parse_report_csv(std::string_view text, MapKind kind);

/// Machine-readable run summary: per-row details plus aggregate ranges.
std::string report_summary_json(MapKind kind, std::span<const AnalysisRow> rows);

/// One line of the two-cipher comparison table.
struct CipherComparison {
    MapKind kind = MapKind::ArnoldCat;
    KeySpace key_space;
    double reference_key_space = 0.0;
    /// Computed and reference sizes differ by more than half an order of magnitude.
    bool key_space_discrepancy = false;
    std::optional<std::pair<double, double>> pt_sensitivity_range;
    std::optional<std::pair<double, double>> key_sensitivity_range;
    bool identifiable_key = false;
    bool robust_kpa = false;
    bool key_space_exceeds_2_100 = false;
};

CipherComparison summarize_report(MapKind kind, std::span<const AnalysisRow> rows,
                                  double resolution = kReferenceKeySpaceResolution);

/// Throws DomainError if either report is empty.
std::vector<CipherComparison> compare_ciphers(std::span<const AnalysisRow> arnold,
                                              std::span<const AnalysisRow> duffing,
                                              double resolution = kReferenceKeySpaceResolution);

inline constexpr std::string_view kComparisonCsvHeader =
    "cipher,key_space,reference_key_space,key_space_discrepancy,pt_sensitivity_min_pct,"
    "pt_sensitivity_max_pct,key_sensitivity_min_pct,key_sensitivity_max_pct,identifiable_key,"
    "robust_kpa,key_space_gt_2_100";

void write_comparison_csv(std::ostream& out, std::span<const CipherComparison> table);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace chaoscrypt
