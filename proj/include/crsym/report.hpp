#ifndef CRSYM_REPORT_HPP
#define CRSYM_REPORT_HPP

#include "crsym/embed.hpp"
#include "crsym/parser.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crsym {

inline constexpr int kReportSchemaVersion = 1;

struct AnalyzeOptions {
    /// Overrides weights declared in the source.
    std::optional<std::vector<Rational>> weights;
    /// Bound for the holomorphic nondegeneracy search; default_degeneracy_bound when unset.
    std::optional<Rational> max_degeneracy_weight;
    bool skip_embedding = false;
    /// Only compute the graded component of this weight.
    std::optional<Rational> component;
    /// Remove pluriharmonic terms (w -> w + i h) instead of rejecting the model.
    bool strip_pluriharmonic = false;
    /// Worker threads for the graded components; 0 picks the hardware count.
    unsigned threads = 0;
};

enum class ReportStatus { Complete, Degenerate, ComponentOnly };

const char *report_status_name(ReportStatus s);

struct ChainReport {
    /// Generalized rotation from g_c the decomposition is taken for.
    VectorField Y;
    std::vector<ChainPair> pairs;
    bool verified = false;
    std::vector<std::string> violations;

    friend bool operator==(const ChainReport &, const ChainReport &) = default;
};

struct EmbeddingReport {
    /// What the embedded symmetry is ("balanced", "chain 1", "non-rigid").
    std::string source;
    Embedding embedding;
    RelatednessCertificate certificate;

    friend bool operator==(const EmbeddingReport &, const EmbeddingReport &) = default;
};

struct AnalysisReport {
    int schema_version = kReportSchemaVersion;
    std::string input;
    int n = 0;
    /// Model polynomial as analyzed (after optional stripping).
    SparsePoly P;
    /// Pluriharmonic terms removed from the input (zero unless stripping was requested).
    SparsePoly stripped;
    std::vector<Rational> weights;
    bool weights_inferred = false;
    std::vector<std::vector<Rational>> weight_candidates;
    ReportStatus status = ReportStatus::Complete;
    NondegeneracyVerdict nondegeneracy;

    /// Real basis of each nonzero graded component.
    std::map<Rational, std::vector<VectorField>> components;
    std::map<Rational, std::vector<VectorField>> gc;
    std::map<Rational, std::vector<VectorField>> gnc;
    int total_dimension = 0;
    int g1_dimension = 0;

    std::optional<BalancedCertificate> balanced;
    /// The independent diagonal reproducing-field solver agrees with the balanced test.
    bool balanced_solvers_agree = true;
    std::vector<ChainReport> chains;
    std::optional<NcReport> nc;
    std::vector<EmbeddingReport> embeddings;

    bool is_chain = false;
    bool one_jet_determined = false;
    std::string verdict;

    friend bool operator==(const AnalysisReport &, const AnalysisReport &) = default;
};

/// Full pipeline. Degenerate models produce a report with status Degenerate and a witness.
/// Invalid models throw the structured parse/validation errors.
AnalysisReport analyze(const ModelSource &src, const AnalyzeOptions &opts = {});

/// Re-checks that every field in the report has zero tangency residual. Throws InternalRankDrop.
void recheck_fields(const AnalysisReport &r);

std::string to_json(const AnalysisReport &r, int indent = 2);
AnalysisReport report_from_json(const std::string &text);
std::string to_text(const AnalysisReport &r);

} // namespace crsym

#endif
