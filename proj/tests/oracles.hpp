#pragma once

// Independent reference implementations used only by the tests. None of these
// call into the library code they are compared against, except for the word
// type used to hand values over.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lsys/random.hpp"
#include "lsys/word.hpp"

namespace oracle {

struct Vec {
    double x = 0.0;
    double y = 0.0;
};

struct Seg {
    Vec a;
    Vec b;
};

/// Turtle walk over character text with the heading kept in degrees
/// (starts facing +y, '+' turns clockwise).
inline std::vector<Seg> walk(const std::string& text, double delta_degrees, double f) {
    struct State {
        Vec p;
        double heading = 0.0;
    };
    std::vector<Seg> out;
    std::vector<State> stack;
    State s;
    for (char c : text) {
        switch (c) {
            case 'F': {
                const double rad = s.heading * std::numbers::pi / 180.0;
                const Vec q{s.p.x + f * std::sin(rad), s.p.y + f * std::cos(rad)};
                out.push_back({s.p, q});
                s.p = q;
                break;
            }
            case '+': s.heading += delta_degrees; break;
            case '-': s.heading -= delta_degrees; break;
            case '[': stack.push_back(s); break;
            case ']':
                s = stack.back();
                stack.pop_back();
                break;
            default: break;
        }
    }
    return out;
}

using PixelSet = std::vector<std::pair<long, long>>;

/// Textbook Bresenham over rounded endpoints, endpoints ordered first.
inline PixelSet bresenham(Vec a, Vec b) {
    std::pair<long, long> p0{std::lround(a.x), std::lround(a.y)};
    std::pair<long, long> p1{std::lround(b.x), std::lround(b.y)};
    if (p1 < p0) std::swap(p0, p1);
    PixelSet pixels;
    long x = p0.first, y = p0.second;
    const long dx = std::labs(p1.first - x), dy = -std::labs(p1.second - y);
    const long sx = x < p1.first ? 1 : -1, sy = y < p1.second ? 1 : -1;
    long err = dx + dy;
    while (true) {
        pixels.emplace_back(x, y);
        if (x == p1.first && y == p1.second) break;
        const long e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y += sy;
        }
    }
    std::sort(pixels.begin(), pixels.end());
    return pixels;
}

/// Rule-1 oracle: rasterize every segment on its own and report whether any
/// two produce the same pixel set.
inline bool raster_doubled_segment(const std::string& text, double delta_degrees, double f) {
    const auto segs = walk(text, delta_degrees, f);
    std::vector<PixelSet> sets;
    sets.reserve(segs.size());
    for (const auto& s : segs) sets.push_back(bresenham(s.a, s.b));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            if (sets[i] == sets[j]) return true;
        }
    }
    return false;
}

/// Parallel rewriting on plain strings. One uniform draw per symbol that has
/// productions, left to right; the first production whose running total
/// exceeds the draw wins.
struct Rule {
    char lhs;
    std::string rhs;
    double p;
};

inline std::string derive(const std::string& axiom, const std::vector<Rule>& rules, int steps, std::uint64_t seed) {
    lsys::SplitMix64 rng(seed);
    std::string word = axiom;
    for (int step = 0; step < steps; ++step) {
        std::string next;
        for (char c : word) {
            std::vector<const Rule*> options;
            for (const auto& r : rules) {
                if (r.lhs == c) options.push_back(&r);
            }
            if (options.empty()) {
                next += c;
                continue;
            }
            const double u = rng.uniform();
            double acc = 0.0;
            const Rule* pick = options.back();
            for (const Rule* r : options) {
                acc += r->p;
                if (u < acc) {
                    pick = r;
                    break;
                }
            }
            next += pick->rhs;
        }
        word = std::move(next);
    }
    return word;
}

/// Calls `visit` with the text of every bracket-balanced fused word of
/// 1..max_tokens tokens over {F, +F, -F, [, ]}.
inline void for_each_fused_word(int max_tokens, const std::function<void(const std::string&)>& visit) {
    static const char* const kTokens[] = {"F", "+F", "-F", "[", "]"};
    std::string text;
    std::function<void(int, int)> rec = [&](int remaining, int depth) {
        if (depth == 0 && !text.empty()) visit(text);
        if (remaining == 0 || depth > remaining) return;
        for (const char* t : kTokens) {
            const int d = depth + (t[0] == '[') - (t[0] == ']');
            if (d < 0 || d > remaining - 1) continue;
            const auto len = text.size();
            text += t;
            rec(remaining - 1, d);
            text.resize(len);
        }
    };
    rec(max_tokens, 0);
}

/// Random bracket-balanced word text of `tokens` body tokens. In the fused
/// scheme rotations always carry their F.
inline std::string random_word(std::mt19937_64& rng, int tokens, lsys::Scheme scheme, bool allow_empty_groups = true) {
    const bool fused = scheme == lsys::Scheme::Fused;
    std::string text;
    int depth = 0;
    bool just_opened = false;
    int emitted = 0;
    while (emitted < tokens || depth > 0) {
        const int left = tokens - emitted;
        std::uniform_int_distribution<int> pick(0, 5);
        int k = pick(rng);
        if (left <= depth) k = 5;
        if (k == 5 && depth == 0) k = 0;
        if (k == 5 && just_opened && !allow_empty_groups) k = 0;
        if (k == 4 && left - 1 <= depth) k = 0;
        switch (k) {
            case 0:
            case 1: text += 'F'; break;
            case 2: text += fused ? "+F" : "+"; break;
            case 3: text += fused ? "-F" : "-"; break;
            case 4:
                text += '[';
                ++depth;
                break;
            default:
                text += ']';
                --depth;
                break;
        }
        just_opened = k == 4;
        ++emitted;
    }
    if (!fused && text.find('F') == std::string::npos) text += 'F';
    return text;
}

/// Shuffles every run of adjacent sibling groups, at every depth.
inline std::string shuffle_siblings(const std::string& text, std::mt19937_64& rng) {
    struct Node {
        std::string atom;
        std::vector<Node> group;
        bool is_group = false;
    };
    std::size_t i = 0;
    std::function<std::vector<Node>()> parse_seq = [&]() {
        std::vector<Node> seq;
        while (i < text.size() && text[i] != ']') {
            Node n;
            if (text[i] == '[') {
                ++i;
                n.is_group = true;
                n.group = parse_seq();
                ++i;
            } else {
                n.atom = std::string(1, text[i++]);
            }
            seq.push_back(std::move(n));
        }
        return seq;
    };
    std::function<std::string(std::vector<Node>&)> emit = [&](std::vector<Node>& seq) {
        for (std::size_t a = 0; a < seq.size();) {
            std::size_t b = a;
            while (b < seq.size() && seq[b].is_group) ++b;
            if (b > a + 1) std::shuffle(seq.begin() + static_cast<long>(a), seq.begin() + static_cast<long>(b), rng);
            a = std::max(b, a + 1);
        }
        std::string out;
        for (auto& n : seq) out += n.is_group ? "[" + emit(n.group) + "]" : n.atom;
        return out;
    };
    auto root = parse_seq();
    return emit(root);
}

}  // namespace oracle
