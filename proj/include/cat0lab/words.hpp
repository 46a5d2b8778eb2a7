#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "cat0lab/types.hpp"

// Free group F2 = <a,b> on the alphabet "aAbB" (A = a^-1, B = b^-1).
namespace cat0lab::words {

bool is_letter(char c);
char inverse_letter(char c);

/// Free reduction; throws ValidationError on letters outside "aAbB".
std::string reduce(std::string_view word);
bool is_reduced(std::string_view word);
std::string inverse(std::string_view word);
/// Reduced product of two words.
std::string multiply(std::string_view lhs, std::string_view rhs);

/// Writes a reduced word as conjugator · core · conjugator^-1 with core
/// cyclically reduced.
struct CyclicDecomposition {
    std::string conjugator;
    std::string core;
};
CyclicDecomposition cyclic_reduce(std::string_view word);

std::size_t common_prefix(std::string_view lhs, std::string_view rhs);

/// Canonical form of the infinite word prefix · period^∞ (period must be a
/// nontrivial reduced word; it need not be cyclically reduced).
T4Boundary normalize_infinite(std::string_view prefix, std::string_view period);

/// First n letters of an infinite word.
std::string take(const T4Boundary& xi, std::size_t n);
char letter_at(const T4Boundary& xi, std::size_t i);

/// Length of the common prefix of a finite and an infinite word.
std::size_t common_prefix(std::string_view word, const T4Boundary& xi);

/// Left multiplication of an infinite word by a finite one.
T4Boundary multiply(std::string_view lhs, const T4Boundary& xi);

/// Number of reduced words of length n (4 * 3^(n-1), and 1 for n = 0).
std::size_t count_reduced(std::size_t n);
/// Bijection between reduced words of length n and [0, count_reduced(n)).
std::size_t index_of_reduced(std::string_view word);
std::string reduced_from_index(std::size_t index, std::size_t n);

}  // namespace cat0lab::words
