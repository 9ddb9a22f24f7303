#include "lsys/grammar.hpp"

#include <cmath>
#include <map>

#include "lsys/random.hpp"

namespace lsys {
namespace {

Token symbol_token(char c) {
    switch (c) {
        case 'F': return Token::F;
        case '+': return Token::Plus;
        case '-': return Token::Minus;
        case '[':
        case ']': throw GrammarError(std::string("bracket '") + c + "' cannot be a production predecessor");
        default: throw GrammarError(std::string("predecessor '") + c + "' is not in the alphabet F+-[]");
    }
}

}  // namespace

Grammar::Grammar(Word axiom, std::vector<Production> productions, double delta_degrees, double segment_length)
    : axiom_(convert(axiom, Scheme::Char)), delta_(delta_degrees), length_(segment_length) {
    if (axiom_.empty()) throw GrammarError("axiom must be nonempty");
    if (!(segment_length > 0.0) || !std::isfinite(segment_length)) throw GrammarError("segment length f must be > 0");
    if (!std::isfinite(delta_degrees)) throw GrammarError("branching angle must be finite");

    std::map<char, double> totals;
    productions_.reserve(productions.size());
    for (auto& p : productions) {
        symbol_token(p.predecessor);
        if (!(p.probability > 0.0 && p.probability <= 1.0)) {
            throw GrammarError("production probability " + std::to_string(p.probability) + " outside (0, 1]");
        }
        totals[p.predecessor] += p.probability;
        productions_.push_back({p.predecessor, convert(p.successor, Scheme::Char), p.probability});
    }
    for (const auto& [symbol, total] : totals) {
        if (std::abs(total - 1.0) > kProbabilityTolerance) {
            throw GrammarError(std::string("probabilities for '") + symbol + "' sum to " + std::to_string(total) +
                               ", expected 1");
        }
    }
    for (std::size_t i = 0; i < productions_.size(); ++i) {
        auto& table = tables_[token_id(symbol_token(productions_[i].predecessor))];
        const double prev = table.cumulative.empty() ? 0.0 : table.cumulative.back();
        table.cumulative.push_back(prev + productions_[i].probability);
        table.production.push_back(i);
    }
}

Grammar Grammar::default_grammar(double delta_degrees, double segment_length) {
    auto rule = [](std::string_view rhs, double p) { return Production{'F', parse(rhs, Scheme::Char), p}; };
    return Grammar(parse("F", Scheme::Char),
                   {
                       rule("F[+F]F", 0.25),
                       rule("F[-F]F", 0.25),
                       rule("F[+F][-F]F", 0.2),
                       rule("FF", 0.15),
                       rule("F", 0.15),
                   },
                   delta_degrees, segment_length);
}

bool Grammar::rewrites(Token symbol) const noexcept {
    return !tables_[token_id(symbol)].production.empty();
}

Word derive(const Grammar& grammar, int steps, std::uint64_t seed) {
    if (steps < 1) throw std::invalid_argument("derive: steps must be >= 1");
    SplitMix64 rng(seed);
    std::vector<Token> current(grammar.axiom().tokens().begin(), grammar.axiom().tokens().end());
    std::vector<Token> next;
    for (int step = 0; step < steps; ++step) {
        next.clear();
        next.reserve(current.size() * 3);
        for (Token t : current) {
            const auto& table = grammar.tables_[token_id(t)];
            if (table.production.empty()) {
                next.push_back(t);
                continue;
            }
            const double u = rng.uniform();
            std::size_t k = 0;
            while (k + 1 < table.cumulative.size() && !(u < table.cumulative[k])) ++k;
            const auto body = grammar.productions_[table.production[k]].successor.tokens();
            next.insert(next.end(), body.begin(), body.end());
        }
        current.swap(next);
    }
    return Word::from_tokens(std::move(current), Scheme::Char);
}

}  // namespace lsys
