#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chindex/fieldspec.hpp"

namespace chindex {

struct SearchConfig {
    u64 ell_bound = 10'000'000;
    /// First level; 0 means max(a, 1).
    unsigned n_min = 0;
    unsigned n_max = 6;
    std::size_t primes_per_level = 4;
    unsigned window = 2;
    /// Worker threads; 0 means hardware concurrency.
    unsigned threads = 0;

    void validate(const FieldSpec& F) const;
    unsigned first_level(const FieldSpec& F) const;
};

struct CandidateRecord {
    u64 ell = 0;
    unsigned n = 0;
    unsigned ire = 0;
    unsigned ima = 0;
    bool accepted = false;

    bool operator==(const CandidateRecord&) const = default;
};

inline const char* const kBoundSemantics =
    "certified upper bound; equals the exact chi-index once a level-n prime in L_n^iso is sampled";

struct IndexReport {
    CharacterClass character_class;
    std::optional<unsigned> upper_bound_valuation;
    std::optional<CandidateRecord> witness;
    std::vector<CandidateRecord> candidates;
    bool stabilized = false;
    std::string semantics = kBoundSemantics;
};

/// Candidate primes for one level: the first K primes ell == 1 mod d p^n up to the bound.
std::vector<u64> level_primes(const FieldSpec& F, unsigned n, const SearchConfig& config);

/// Evaluate every sampled (n, ell) for one conjugacy class.
std::vector<CandidateRecord> scan_candidates(const FieldSpec& F, const CharacterClass& cls, unsigned r, const SearchConfig& config);

/// Minimum over accepted records, witness, and the stabilization flag.
IndexReport index_upper_bound(const std::vector<CandidateRecord>& records, unsigned window);

/// One report per Q_p-conjugacy class (all classes, or only those given).
std::vector<IndexReport> full_run(const FieldSpec& F, unsigned r, const SearchConfig& config);
std::vector<IndexReport> full_run(const FieldSpec& F, unsigned r, const SearchConfig& config, const std::vector<CharacterClass>& classes);

}  // namespace chindex
