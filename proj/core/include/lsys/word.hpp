#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lsys {

/// Tokenization scheme. Char maps every character to a token; Fused absorbs
/// each rotation into the F that follows it (`+F`, `-F`).
enum class Scheme : std::uint8_t { Char, Fused };

/// Token kinds. The numeric value is the token id used in every file format:
/// BOS=0, EOS=1, then the five body tokens. In the fused scheme Plus and
/// Minus stand for `+F` and `-F`.
enum class Token : std::uint8_t {
    Bos = 0,
    Eos = 1,
    F = 2,
    Plus = 3,
    Minus = 4,
    Open = 5,
    Close = 6,
};

inline constexpr int kVocabularySize = 7;
inline constexpr int kBosId = 0;
inline constexpr int kEosId = 1;

constexpr int token_id(Token t) noexcept { return static_cast<int>(t); }
constexpr bool is_body(Token t) noexcept { return t != Token::Bos && t != Token::Eos; }
constexpr bool is_rotation(Token t) noexcept { return t == Token::Plus || t == Token::Minus; }

/// Text of a single token, e.g. "+F" for Plus in the fused scheme.
std::string_view token_text(Token token, Scheme scheme) noexcept;

std::string_view scheme_name(Scheme scheme) noexcept;
/// Accepts "char" or "fused". Throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view name);

enum class SyntaxErrorKind { UnbalancedBrackets, DanglingRotation, IllegalCharacter, IllegalToken };

std::string_view syntax_error_name(SyntaxErrorKind kind) noexcept;

/// Raised when text or a token sequence is not a valid word. `position` is a
/// character offset for text input and a token index for token input.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(SyntaxErrorKind kind, std::size_t position, const std::string& what)
        : std::runtime_error(what), kind_(kind), position_(position) {}

    SyntaxErrorKind kind() const noexcept { return kind_; }
    std::size_t position() const noexcept { return position_; }

private:
    SyntaxErrorKind kind_;
    std::size_t position_;
};

/// A bracket-balanced sequence of body tokens under one scheme.
/// Immutable once built; construct through parse() or Word::from_tokens().
class Word {
public:
    Word() = default;

    /// Validates the sequence (body tokens only, balanced brackets).
    static Word from_tokens(std::vector<Token> tokens, Scheme scheme);

    std::span<const Token> tokens() const noexcept { return tokens_; }
    Scheme scheme() const noexcept { return scheme_; }
    std::size_t size() const noexcept { return tokens_.size(); }
    bool empty() const noexcept { return tokens_.empty(); }
    Token operator[](std::size_t i) const noexcept { return tokens_[i]; }

    bool operator==(const Word&) const = default;

private:
    Word(std::vector<Token> tokens, Scheme scheme) : tokens_(std::move(tokens)), scheme_(scheme) {}

    std::vector<Token> tokens_;
    Scheme scheme_ = Scheme::Char;
};

/// Parses word text. Whitespace is ignored.
Word parse(std::string_view text, Scheme scheme);

/// Character form of the word; identical for both schemes.
std::string to_string(const Word& word);

/// Re-expresses a word in another scheme. Char -> Fused throws
/// SyntaxError(DanglingRotation) when a rotation is not followed by F.
Word convert(const Word& word, Scheme scheme);

/// Body token ids of `word` under `scheme` (no BOS/EOS).
std::vector<int> tokenize(const Word& word, Scheme scheme);

/// BOS, body ids, EOS.
std::vector<int> tokenize_sequence(const Word& word, Scheme scheme);

/// Inverse of tokenize. A leading BOS is skipped and decoding stops at the
/// first EOS. Throws SyntaxError for ids outside the vocabulary, a BOS in the
/// body, or unbalanced brackets.
Word detokenize(std::span<const int> ids, Scheme scheme);

/// Best-effort character form of an id sequence, without validation. Same
/// BOS/EOS handling as detokenize; unknown ids render as '?'.
std::string ids_to_text(std::span<const int> ids, Scheme scheme);

/// Number of F symbols in the character form.
std::size_t forward_count(const Word& word) noexcept;

/// Deepest bracket nesting level; 0 for a word without brackets.
int max_depth(const Word& word) noexcept;

/// Word with every + swapped for - and vice versa.
Word mirrored(const Word& word);

}  // namespace lsys
