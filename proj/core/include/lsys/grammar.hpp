#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lsys/word.hpp"

namespace lsys {

class GrammarError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One stochastic rewrite `predecessor -> successor` taken with `probability`.
struct Production {
    char predecessor = 'F';
    Word successor;
    double probability = 1.0;
};

/// Stochastic, context-free L-system over the alphabet {F, +, -, [, ]}.
///
/// Successors are stored in the char scheme. Brackets cannot be
/// predecessors because replacing one half of a pair would break balance.
/// For every predecessor the probabilities must sum to 1 within 1e-9.
class Grammar {
public:
    static constexpr std::string_view kAlphabet = "F+-[]";
    static constexpr double kProbabilityTolerance = 1e-9;

    Grammar(Word axiom, std::vector<Production> productions, double delta_degrees, double segment_length);

    /// Five-production default used for dataset generation:
    /// F -> F[+F]F (0.25) | F[-F]F (0.25) | F[+F][-F]F (0.2) | FF (0.15) | F (0.15).
    static Grammar default_grammar(double delta_degrees = 25.0, double segment_length = 100.0);

    const Word& axiom() const noexcept { return axiom_; }
    const std::vector<Production>& productions() const noexcept { return productions_; }
    double delta() const noexcept { return delta_; }
    double segment_length() const noexcept { return length_; }

    /// True when `symbol` has at least one production.
    bool rewrites(Token symbol) const noexcept;

private:
    friend Word derive(const Grammar&, int, std::uint64_t);

    struct Table {
        std::vector<double> cumulative;
        std::vector<std::size_t> production;  // index into productions_
    };

    Word axiom_;
    std::vector<Production> productions_;
    double delta_;
    double length_;
    Table tables_[kVocabularySize];
};

/// Applies `steps` parallel rewriting passes to the axiom.
///
/// Each pass scans the current word left to right. Every symbol occurrence
/// with productions consumes one uniform draw u from a SplitMix64 stream
/// seeded with `seed` and is replaced by the first production whose
/// cumulative probability exceeds u. Other symbols are copied. The result
/// is in the char scheme and depends only on (grammar, steps, seed).
Word derive(const Grammar& grammar, int steps, std::uint64_t seed);

}  // namespace lsys
