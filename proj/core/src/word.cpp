#include "lsys/word.hpp"

#include <algorithm>

namespace lsys {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string describe(SyntaxErrorKind kind, std::size_t pos, std::string_view unit) {
    std::string msg(syntax_error_name(kind));
    msg += " at ";
    msg += unit;
    msg += ' ';
    msg += std::to_string(pos);
    return msg;
}

[[noreturn]] void fail(SyntaxErrorKind kind, std::size_t pos, std::string_view unit) {
    throw SyntaxError(kind, pos, describe(kind, pos, unit));
}

/// Position of the outermost unmatched bracket, or npos when balanced.
template <class Seq, class IsOpen, class IsClose>
std::size_t find_unbalanced(const Seq& seq, IsOpen is_open, IsClose is_close) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (is_open(seq[i])) {
            open.push_back(i);
        } else if (is_close(seq[i])) {
            if (open.empty()) return i;
            open.pop_back();
        }
    }
    return open.empty() ? std::string::npos : open.front();
}

}  // namespace

std::string_view token_text(Token token, Scheme scheme) noexcept {
    const bool fused = scheme == Scheme::Fused;
    switch (token) {
        case Token::Bos: return "<bos>";
        case Token::Eos: return "<eos>";
        case Token::F: return "F";
        case Token::Plus: return fused ? "+F" : "+";
        case Token::Minus: return fused ? "-F" : "-";
        case Token::Open: return "[";
        case Token::Close: return "]";
    }
    return "?";
}

std::string_view scheme_name(Scheme scheme) noexcept {
    return scheme == Scheme::Fused ? "fused" : "char";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "char") return Scheme::Char;
    if (name == "fused") return Scheme::Fused;
    throw std::invalid_argument("unknown tokenization scheme '" + std::string(name) +
                                "' (expected 'char' or 'fused')");
}

std::string_view syntax_error_name(SyntaxErrorKind kind) noexcept {
    switch (kind) {
        case SyntaxErrorKind::UnbalancedBrackets: return "UnbalancedBrackets";
        case SyntaxErrorKind::DanglingRotation: return "DanglingRotation";
        case SyntaxErrorKind::IllegalCharacter: return "IllegalCharacter";
        case SyntaxErrorKind::IllegalToken: return "IllegalToken";
    }
    return "SyntaxError";
}

Word Word::from_tokens(std::vector<Token> tokens, Scheme scheme) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!is_body(tokens[i])) fail(SyntaxErrorKind::IllegalToken, i, "token");
    }
    const auto bad = find_unbalanced(
        tokens, [](Token t) { return t == Token::Open; }, [](Token t) { return t == Token::Close; });
    if (bad != std::string::npos) fail(SyntaxErrorKind::UnbalancedBrackets, bad, "token");
    return Word(std::move(tokens), scheme);
}

Word parse(std::string_view text, Scheme scheme) {
    std::vector<Token> tokens;
    std::vector<std::size_t> origin;  // character offset of each token
    tokens.reserve(text.size());
    origin.reserve(text.size());

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (is_space(c)) continue;
        Token t;
        switch (c) {
            case 'F': t = Token::F; break;
            case '+': t = Token::Plus; break;
            case '-': t = Token::Minus; break;
            case '[': t = Token::Open; break;
            case ']': t = Token::Close; break;
            default: fail(SyntaxErrorKind::IllegalCharacter, i, "character");
        }
        const std::size_t start = i;
        if (scheme == Scheme::Fused && is_rotation(t)) {
            std::size_t j = i + 1;
            while (j < text.size() && is_space(text[j])) ++j;
            if (j >= text.size() || text[j] != 'F') fail(SyntaxErrorKind::DanglingRotation, i, "character");
            i = j;
        }
        tokens.push_back(t);
        origin.push_back(start);
    }

    const auto bad = find_unbalanced(
        tokens, [](Token t) { return t == Token::Open; }, [](Token t) { return t == Token::Close; });
    if (bad != std::string::npos) fail(SyntaxErrorKind::UnbalancedBrackets, origin[bad], "character");
    return Word::from_tokens(std::move(tokens), scheme);
}

std::string to_string(const Word& word) {
    std::string out;
    out.reserve(word.size() * 2);
    for (Token t : word.tokens()) out += token_text(t, word.scheme());
    return out;
}

Word convert(const Word& word, Scheme scheme) {
    if (word.scheme() == scheme) return word;
    std::vector<Token> out;
    out.reserve(word.size() * 2);
    const auto in = word.tokens();
    if (scheme == Scheme::Char) {
        for (Token t : in) {
            out.push_back(t);
            if (is_rotation(t)) out.push_back(Token::F);
        }
    } else {
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (is_rotation(in[i])) {
                if (i + 1 >= in.size() || in[i + 1] != Token::F) fail(SyntaxErrorKind::DanglingRotation, i, "token");
                out.push_back(in[i]);
                ++i;
            } else {
                out.push_back(in[i]);
            }
        }
    }
    return Word::from_tokens(std::move(out), scheme);
}

std::vector<int> tokenize(const Word& word, Scheme scheme) {
    const Word w = convert(word, scheme);
    std::vector<int> ids;
    ids.reserve(w.size());
    for (Token t : w.tokens()) ids.push_back(token_id(t));
    return ids;
}

std::vector<int> tokenize_sequence(const Word& word, Scheme scheme) {
    std::vector<int> ids{kBosId};
    const auto body = tokenize(word, scheme);
    ids.insert(ids.end(), body.begin(), body.end());
    ids.push_back(kEosId);
    return ids;
}

Word detokenize(std::span<const int> ids, Scheme scheme) {
    std::vector<Token> tokens;
    std::size_t i = (!ids.empty() && ids.front() == kBosId) ? 1 : 0;
    for (; i < ids.size(); ++i) {
        const int id = ids[i];
        if (id == kEosId) break;
        if (id <= kEosId || id >= kVocabularySize) fail(SyntaxErrorKind::IllegalToken, i, "token");
        tokens.push_back(static_cast<Token>(id));
    }
    return Word::from_tokens(std::move(tokens), scheme);
}

std::string ids_to_text(std::span<const int> ids, Scheme scheme) {
    std::string out;
    std::size_t i = (!ids.empty() && ids.front() == kBosId) ? 1 : 0;
    for (; i < ids.size(); ++i) {
        const int id = ids[i];
        if (id == kEosId) break;
        if (id <= kEosId || id >= kVocabularySize) {
            out += '?';
            continue;
        }
        out += token_text(static_cast<Token>(id), scheme);
    }
    return out;
}

std::size_t forward_count(const Word& word) noexcept {
    const bool fused = word.scheme() == Scheme::Fused;
    return static_cast<std::size_t>(std::count_if(word.tokens().begin(), word.tokens().end(), [&](Token t) {
        return t == Token::F || (fused && is_rotation(t));
    }));
}

int max_depth(const Word& word) noexcept {
    int depth = 0;
    int deepest = 0;
    for (Token t : word.tokens()) {
        if (t == Token::Open) deepest = std::max(deepest, ++depth);
        else if (t == Token::Close) --depth;
    }
    return deepest;
}

Word mirrored(const Word& word) {
    std::vector<Token> out(word.tokens().begin(), word.tokens().end());
    for (Token& t : out) {
        if (t == Token::Plus) t = Token::Minus;
        else if (t == Token::Minus) t = Token::Plus;
    }
    return Word::from_tokens(std::move(out), word.scheme());
}

}  // namespace lsys
