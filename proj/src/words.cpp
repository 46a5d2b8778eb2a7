#include "cat0lab/words.hpp"

#include <algorithm>

namespace cat0lab::words {

namespace {

constexpr std::string_view kAlphabet = "aAbB";

int letter_code(char c) {
    switch (c) {
        case 'a': return 0;
        case 'A': return 1;
        case 'b': return 2;
        case 'B': return 3;
        default: throw ValidationError(std::string("invalid letter '") + c + "' (expected one of aAbB)");
    }
}

std::string primitive_root(const std::string& p) {
    const std::size_t n = p.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i) periodic = p[i] == p[i - d];
        if (periodic) return p.substr(0, d);
    }
    return p;
}

}  // namespace

bool is_letter(char c) { return kAlphabet.find(c) != std::string_view::npos; }

char inverse_letter(char c) {
    switch (c) {
        case 'a': return 'A';
        case 'A': return 'a';
        case 'b': return 'B';
        case 'B': return 'b';
        default: throw ValidationError(std::string("invalid letter '") + c + "' (expected one of aAbB)");
    }
}

std::string reduce(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (char c : word) {
        const char inv = inverse_letter(c);
        if (!out.empty() && out.back() == inv) {
            out.pop_back();
        } else {
            out.push_back(c);
        }
    }
    return out;
}

bool is_reduced(std::string_view word) {
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!is_letter(word[i])) return false;
        if (i > 0 && word[i - 1] == inverse_letter(word[i])) return false;
    }
    return true;
}

std::string inverse(std::string_view word) {
    std::string out(word.rbegin(), word.rend());
    for (char& c : out) c = inverse_letter(c);
    return out;
}

std::string multiply(std::string_view lhs, std::string_view rhs) {
    std::string out(lhs);
    std::size_t i = 0;
    while (i < rhs.size() && !out.empty() && out.back() == inverse_letter(rhs[i])) {
        out.pop_back();
        ++i;
    }
    for (; i < rhs.size(); ++i) {
        letter_code(rhs[i]);
        out.push_back(rhs[i]);
    }
    return out;
}

CyclicDecomposition cyclic_reduce(std::string_view word) {
    std::size_t lo = 0;
    std::size_t hi = word.size();
    while (hi - lo >= 2 && word[lo] == inverse_letter(word[hi - 1])) {
        ++lo;
        --hi;
    }
    return {std::string(word.substr(0, lo)), std::string(word.substr(lo, hi - lo))};
}

std::size_t common_prefix(std::string_view lhs, std::string_view rhs) {
    const auto [a, b] = std::mismatch(lhs.begin(), lhs.end(), rhs.begin(), rhs.end());
    return static_cast<std::size_t>(a - lhs.begin());
}

T4Boundary normalize_infinite(std::string_view prefix, std::string_view period) {
    const std::string reduced_period = reduce(period);
    if (reduced_period.empty()) throw ValidationError("infinite word: period reduces to the identity");
    auto [conj, core] = cyclic_reduce(reduced_period);
    // (s c s^-1)^∞ = s c^∞
    std::string u = multiply(reduce(prefix), conj);
    std::string p = std::move(core);

    while (!u.empty() && u.back() == inverse_letter(p.front())) {
        u.pop_back();
        std::rotate(p.begin(), p.begin() + 1, p.end());
    }
    while (!u.empty() && u.back() == p.back()) {
        u.pop_back();
        std::rotate(p.rbegin(), p.rbegin() + 1, p.rend());
    }
    return {std::move(u), primitive_root(p)};
}

char letter_at(const T4Boundary& xi, std::size_t i) {
    if (i < xi.prefix.size()) return xi.prefix[i];
    return xi.period[(i - xi.prefix.size()) % xi.period.size()];
}

std::string take(const T4Boundary& xi, std::size_t n) {
    std::string out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(letter_at(xi, i));
    return out;
}

std::size_t common_prefix(std::string_view word, const T4Boundary& xi) {
    std::size_t i = 0;
    while (i < word.size() && word[i] == letter_at(xi, i)) ++i;
    return i;
}

T4Boundary multiply(std::string_view lhs, const T4Boundary& xi) {
    return normalize_infinite(multiply(lhs, xi.prefix), xi.period);
}

std::size_t count_reduced(std::size_t n) {
    if (n == 0) return 1;
    std::size_t c = 4;
    for (std::size_t i = 1; i < n; ++i) c *= 3;
    return c;
}

// First letter: 4 choices; each later letter: 3 choices (any letter except the
// inverse of its predecessor), ranked by alphabet order with the excluded
// letter skipped.
std::size_t index_of_reduced(std::string_view word) {
    if (word.empty()) return 0;
    std::size_t idx = static_cast<std::size_t>(letter_code(word[0]));
    for (std::size_t i = 1; i < word.size(); ++i) {
        const int forbidden = letter_code(inverse_letter(word[i - 1]));
        int code = letter_code(word[i]);
        if (code == forbidden) throw ValidationError("index_of_reduced: word is not reduced");
        if (code > forbidden) --code;
        idx = idx * 3 + static_cast<std::size_t>(code);
    }
    return idx;
}

std::string reduced_from_index(std::size_t index, std::size_t n) {
    if (index >= count_reduced(n)) throw UsageError("reduced_from_index: index out of range");
    if (n == 0) return {};
    std::string digits(n, 0);
    for (std::size_t i = n; i-- > 1;) {
        digits[i] = static_cast<char>(index % 3);
        index /= 3;
    }
    digits[0] = static_cast<char>(index);
    std::string out;
    out.push_back(kAlphabet[static_cast<std::size_t>(digits[0])]);
    for (std::size_t i = 1; i < n; ++i) {
        const int forbidden = letter_code(inverse_letter(out.back()));
        int code = digits[i];
        if (code >= forbidden) ++code;
        out.push_back(kAlphabet[static_cast<std::size_t>(code)]);
    }
    return out;
}

}  // namespace cat0lab::words
