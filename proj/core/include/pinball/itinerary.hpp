#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pinball {

class Polygon;

/// Cyclic word of side indices (0-based internally, 1-based in text).
class Itinerary {
 public:
  Itinerary() = default;
  explicit Itinerary(std::vector<int> word) : word_(std::move(word)) {}

  /// Parses "1,2,1,3" (1-based labels).
  static Itinerary parse(std::string_view text);
  /// Builds from 1-based labels, e.g. Itinerary::from_labels({1, 2, 1, 3}).
  static Itinerary from_labels(std::vector<int> labels);

  const std::vector<int>& word() const { return word_; }
  std::size_t period() const { return word_.size(); }
  bool is_even() const { return word_.size() % 2 == 0; }
  int operator[](std::size_t k) const { return word_[k % word_.size()]; }

  /// Letters in range, at least two letters, no letter repeated cyclically.
  bool is_legal_for(std::size_t sides) const;
  /// Throws IllegalItinerary unless is_legal_for(sides).
  void validate(std::size_t sides) const;

  Itinerary rotated(std::size_t k) const;
  /// Word read backwards; the itinerary of the time-reversed cylinder.
  Itinerary reversed() const;
  /// Lexicographically minimal rotation.
  Itinerary canonical() const;
  /// Shortest word whose power is this word.
  Itinerary primitive() const;

  std::string to_string() const;

  bool operator==(const Itinerary&) const = default;
  auto operator<=>(const Itinerary&) const = default;

 private:
  std::vector<int> word_;
};

/// Galperin-Stepin-Vorobets criterion: the alternating sum of the letters,
/// taken as formal symbols, vanishes. Odd words always pass (their doubled
/// word cancels).
bool gsv_check(const Itinerary& itinerary);

/// All cyclic words of the given period over `sides` letters with distinct
/// neighbours, one representative (canonical form) per rotation class.
std::vector<Itinerary> enumerate_words(std::size_t sides, std::size_t period);

}  // namespace pinball
