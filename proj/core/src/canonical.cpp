#include "lsys/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace lsys {
namespace {

/// A token, or a bracketed group when token == Open.
struct Node {
    Token token = Token::F;
    std::size_t index = 0;  // token index in the source word
    std::vector<Node> children;

    bool is_group() const noexcept { return token == Token::Open; }
};

using Branch = std::vector<Node>;

Branch build_tree(std::span<const Token> tokens) {
    Branch root;
    std::vector<Branch*> open{&root};
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token t = tokens[i];
        if (t == Token::Close) {
            open.pop_back();
            continue;
        }
        open.back()->push_back(Node{t, i, {}});
        if (t == Token::Open) open.push_back(&open.back()->back().children);
    }
    return root;
}

void flatten(const Branch& branch, std::vector<Token>& out) {
    for (const Node& n : branch) {
        out.push_back(n.token);
        if (n.is_group()) {
            flatten(n.children, out);
            out.push_back(Token::Close);
        }
    }
}

std::vector<Token> flatten(const Branch& branch) {
    std::vector<Token> out;
    flatten(branch, out);
    return out;
}

int rank(Token t) noexcept {
    switch (t) {
        case Token::Plus: return 0;
        case Token::F: return 1;
        case Token::Minus: return 2;
        case Token::Open: return 3;
        case Token::Close: return 4;
        default: return 5;
    }
}

Token opposite(Token t) noexcept { return t == Token::Plus ? Token::Minus : Token::Plus; }

/// Calls fn(begin, end) for every maximal run of >= 2 adjacent groups.
template <class Fn>
void for_each_group_run(const Branch& branch, Fn&& fn) {
    std::size_t i = 0;
    while (i < branch.size()) {
        if (!branch[i].is_group()) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < branch.size() && branch[j].is_group()) ++j;
        if (j - i >= 2) fn(i, j);
        i = j;
    }
}

bool sort_runs(Branch& branch) {
    bool changed = false;
    for_each_group_run(branch, [&](std::size_t begin, std::size_t end) {
        std::vector<std::pair<std::vector<Token>, Node>> keyed;
        keyed.reserve(end - begin);
        for (std::size_t k = begin; k < end; ++k) keyed.emplace_back(flatten(branch[k].children), branch[k]);
        auto less = [](const auto& a, const auto& b) { return compare_branches(a.first, b.first) < 0; };
        if (std::is_sorted(keyed.begin(), keyed.end(), less)) return;
        std::stable_sort(keyed.begin(), keyed.end(), less);
        for (std::size_t k = begin; k < end; ++k) branch[k] = std::move(keyed[k - begin].second);
        changed = true;
    });
    return changed;
}

bool unwrap_tail(Branch& branch, Scheme scheme) {
    if (branch.empty() || !branch.back().is_group() || branch.back().children.empty()) return false;
    const Branch& content = branch.back().children;
    if (scheme == Scheme::Char && branch.size() >= 2) {
        const Token before = branch[branch.size() - 2].token;
        if (is_rotation(before) && content.front().token == opposite(before)) return false;
    }
    Branch spliced = std::move(branch.back().children);
    branch.pop_back();
    for (auto& n : spliced) branch.push_back(std::move(n));
    return true;
}

void canonicalize(Branch& branch, Scheme scheme) {
    for (Node& n : branch) {
        if (n.is_group()) canonicalize(n.children, scheme);
    }
    for (;;) {
        const bool sorted = sort_runs(branch);
        const bool unwrapped = unwrap_tail(branch, scheme);
        if (!sorted && !unwrapped) break;
    }
}

void check_structure(const Branch& branch, std::vector<RuleViolation>& rule4, std::vector<RuleViolation>& rule5,
                     bool is_root) {
    for_each_group_run(branch, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin + 1; k < end; ++k) {
            if (compare_branches(flatten(branch[k - 1].children), flatten(branch[k].children)) > 0) {
                rule4.push_back({4,
                                 {ViolationLocation::Kind::Token, branch[begin].index, 0},
                                 "sibling branches at token " + std::to_string(branch[begin].index) +
                                     " are not sorted right to left"});
                return;
            }
        }
    });
    if (!branch.empty() && branch.back().is_group()) {
        rule5.push_back({5,
                         {ViolationLocation::Kind::Token, branch.back().index, 0},
                         std::string(is_root ? "word" : "branch") + " ends with the sub-branch at token " +
                             std::to_string(branch.back().index)});
    }
    for (const Node& n : branch) {
        if (n.is_group()) check_structure(n.children, rule4, rule5, false);
    }
}

double distance(Point p, Point q) noexcept { return std::hypot(p.x - q.x, p.y - q.y); }

bool coincide(const Segment& s, const Segment& t, double tol) noexcept {
    return (distance(s.a, t.a) <= tol && distance(s.b, t.b) <= tol) ||
           (distance(s.a, t.b) <= tol && distance(s.b, t.a) <= tol);
}

struct CellHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const noexcept {
        return std::hash<std::int64_t>{}(c.first * 0x9E3779B97F4A7C15LL ^ c.second);
    }
};

}  // namespace

int compare_branches(std::span<const Token> lhs, std::span<const Token> rhs) noexcept {
    const std::size_t n = std::min(lhs.size(), rhs.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int d = rank(lhs[i]) - rank(rhs[i]);
        if (d != 0) return d;
    }
    if (lhs.size() == rhs.size()) return 0;
    return lhs.size() < rhs.size() ? -1 : 1;
}

Word rewrite_canonical(const Word& word) {
    Word current = word;
    // Each branch already reaches its own fixpoint; the outer loop only
    // guards the whole-word result.
    for (std::size_t guard = 0; guard <= word.size(); ++guard) {
        Branch tree = build_tree(current.tokens());
        canonicalize(tree, current.scheme());
        Word next = Word::from_tokens(flatten(tree), current.scheme());
        if (next == current) break;
        current = std::move(next);
    }
    return current;
}

std::vector<std::pair<std::size_t, std::size_t>> coincident_segments(std::span<const Segment> segments,
                                                                     double tolerance) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (segments.size() < 2) return pairs;
    std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, CellHash> cells;
    cells.reserve(segments.size() * 2);
    auto cell_of = [&](const Segment& s) {
        const double mx = (s.a.x + s.b.x) / 2.0;
        const double my = (s.a.y + s.b.y) / 2.0;
        return std::pair{static_cast<std::int64_t>(std::floor(mx / tolerance)),
                         static_cast<std::int64_t>(std::floor(my / tolerance))};
    };
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto [cx, cy] = cell_of(segments[i]);
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = cells.find({cx + dx, cy + dy});
                if (it == cells.end()) continue;
                for (std::size_t j : it->second) {
                    if (coincide(segments[j], segments[i], tolerance)) pairs.emplace_back(j, i);
                }
            }
        }
        cells[{cx, cy}].push_back(i);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> partially_overlapping_segments(std::span<const Segment> segments,
                                                                                double tolerance) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& s = segments[i];
        const double len = distance(s.a, s.b);
        if (!(len > 0.0)) continue;
        const double ux = (s.b.x - s.a.x) / len;
        const double uy = (s.b.y - s.a.y) / len;
        for (std::size_t j = i + 1; j < segments.size(); ++j) {
            const Segment& t = segments[j];
            if (coincide(s, t, tolerance)) continue;
            auto offset = [&](Point p) { return std::abs((p.x - s.a.x) * uy - (p.y - s.a.y) * ux); };
            if (offset(t.a) > tolerance || offset(t.b) > tolerance) continue;
            const double t0 = (t.a.x - s.a.x) * ux + (t.a.y - s.a.y) * uy;
            const double t1 = (t.b.x - s.a.x) * ux + (t.b.y - s.a.y) * uy;
            const double shared = std::min(len, std::max(t0, t1)) - std::max(0.0, std::min(t0, t1));
            if (shared > tolerance) pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

std::vector<RuleViolation> check(const Word& word, double validation_angle, double length,
                                 const CheckOptions& options) {
    std::vector<RuleViolation> out;

    // Rule 1: doubled segments.
    const SegmentList segments = interpret(word, validation_angle, length);
    const double tol = kCoincidenceTolerance * length;
    for (const auto& [i, j] : coincident_segments(segments, tol)) {
        out.push_back({1,
                       {ViolationLocation::Kind::SegmentPair, i, j},
                       "segments " + std::to_string(i) + " and " + std::to_string(j) + " lie on top of each other"});
    }
    if (options.flag_partial_overlaps) {
        for (const auto& [i, j] : partially_overlapping_segments(segments, tol)) {
            out.push_back({1,
                           {ViolationLocation::Kind::SegmentPair, i, j},
                           "segments " + std::to_string(i) + " and " + std::to_string(j) + " partially overlap"});
        }
    }

    // Rule 2: cancelling rotations, judged on the character form.
    const std::string text = to_string(word);
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if ((text[i] == '+' && text[i + 1] == '-') || (text[i] == '-' && text[i + 1] == '+')) {
            out.push_back({2,
                           {ViolationLocation::Kind::Character, i, 0},
                           "opposite rotations '" + text.substr(i, 2) + "' at character " + std::to_string(i)});
        }
    }

    // Rule 3: empty branches.
    const auto tokens = word.tokens();
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (tokens[i] == Token::Open && tokens[i + 1] == Token::Close) {
            out.push_back({3, {ViolationLocation::Kind::Token, i, 0}, "empty branch [] at token " + std::to_string(i)});
        }
    }

    // Rules 4 and 5: sibling order and trailing sub-branches.
    std::vector<RuleViolation> rule4, rule5;
    check_structure(build_tree(tokens), rule4, rule5, true);
    auto by_location = [](const RuleViolation& a, const RuleViolation& b) {
        return a.location.first < b.location.first;
    };
    std::sort(rule4.begin(), rule4.end(), by_location);
    std::sort(rule5.begin(), rule5.end(), by_location);
    out.insert(out.end(), rule4.begin(), rule4.end());
    out.insert(out.end(), rule5.begin(), rule5.end());
    return out;
}

bool is_canonical(const Word& word, double validation_angle, double length) {
    return check(word, validation_angle, length).empty();
}

}  // namespace lsys
