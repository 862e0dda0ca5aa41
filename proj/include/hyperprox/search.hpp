#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperprox/model_file.hpp"
#include "hyperprox/proximity.hpp"

namespace hyperprox {

enum class TargetName {
    lodato_not_ef,
    far_not_strongly_far,
    sf_not_hat,
    miss_inclusion_violation,
    incomparable_topologies,
    basic_not_lodato,
};

const char* to_string(TargetName name);
/// Throws Error(invalid_target) for unknown names.
TargetName parse_target_name(std::string_view name);

/// Families of candidate models.
enum class CandidateKind { point_relation, table, alexandroff, overlap, gap };

const char* to_string(CandidateKind kind);

/// Largest n enumerated exhaustively for each kind; larger n is sampled.
int exhaustive_cap(CandidateKind kind);
inline constexpr int kRandomizedMaxPoints = 6;

struct SearchTarget {
    TargetName name = TargetName::basic_not_lodato;
    bool require_compatible = false;
    bool require_t1 = false;
    /// Restrict candidates to Lodato relations (the standing hypothesis of
    /// the strongly-far results).
    bool require_lodato = false;
    int min_n = 1;
    int max_n = 3;
    std::vector<CandidateKind> kinds;

    /// Default constraints and candidate kinds for a target.
    static SearchTarget defaults(TargetName name, int max_n);
    /// Throws Error(invalid_target) on an inconsistent target.
    void validate() const;
};

enum class SearchStatus { witness_found, exhausted_no_witness, budget_exhausted };

const char* to_string(SearchStatus status);

struct SearchOutcome {
    SearchStatus status = SearchStatus::exhausted_no_witness;
    SearchTarget target;
    std::uint64_t candidates = 0;
    std::uint64_t evaluations = 0;
    /// Candidates enumerated exhaustively per n (index n-1).
    std::vector<std::uint64_t> exhaustive_per_n;
    std::uint64_t randomized = 0;
    /// Witness model with its replay section filled in.
    std::optional<ModelFile> witness;
    std::string summary;
};

/// Deterministic in (target, budget, seed). Budget counts relation-pair
/// evaluations; exhaustive candidates ignore the seed.
SearchOutcome search(const SearchTarget& target, std::uint64_t budget, std::uint64_t seed);

/// Re-executes the witness's replay calls on a freshly parsed copy.
bool replay(const SearchOutcome& outcome);
/// Throws Error(malformed_witness) when the file has no usable replay section.
bool replay(const ModelFile& witness, const Caps& caps = {});

/// All symmetric reflexive relations on n points in canonical order (bit k
/// of the index toggles the k-th pair (i<j) in lexicographic order).
/// With `up_to_isomorphism`, only the smallest index of each orbit is kept.
std::vector<PointRelation> enumerate_point_relations(int n, bool up_to_isomorphism = false);

/// All topologies on n points (n <= 5), via their specialization preorders.
std::vector<std::vector<Subset>> enumerate_topologies(int n);

}  // namespace hyperprox
