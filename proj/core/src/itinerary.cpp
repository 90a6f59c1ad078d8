#include "pinball/itinerary.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "pinball/error.hpp"

namespace pinball {

Itinerary Itinerary::parse(std::string_view text) {
  std::vector<int> labels;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && (token.front() == ' ' || token.front() == '{')) token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '}')) token.remove_suffix(1);
    int value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw Error(ErrorCode::ParseError, "bad itinerary \"" + std::string(text) + "\"");
    }
    labels.push_back(value);
    pos = comma + 1;
  }
  return from_labels(std::move(labels));
}

Itinerary Itinerary::from_labels(std::vector<int> labels) {
  for (int& v : labels) v -= 1;
  return Itinerary(std::move(labels));
}

bool Itinerary::is_legal_for(std::size_t sides) const {
  if (word_.size() < 2) return false;
  const int d = static_cast<int>(sides);
  for (std::size_t k = 0; k < word_.size(); ++k) {
    if (word_[k] < 0 || word_[k] >= d) return false;
    if (word_[k] == word_[(k + 1) % word_.size()]) return false;
  }
  return true;
}

void Itinerary::validate(std::size_t sides) const {
  if (!is_legal_for(sides)) {
    throw Error(ErrorCode::IllegalItinerary,
                "\"" + to_string() + "\" is not a cyclic word over " + std::to_string(sides) +
                    " sides with distinct neighbours");
  }
}

Itinerary Itinerary::rotated(std::size_t k) const {
  std::vector<int> w(word_);
  if (!w.empty()) std::rotate(w.begin(), w.begin() + static_cast<long>(k % w.size()), w.end());
  return Itinerary(std::move(w));
}

Itinerary Itinerary::reversed() const {
  std::vector<int> w(word_.rbegin(), word_.rend());
  return Itinerary(std::move(w));
}

Itinerary Itinerary::canonical() const {
  Itinerary best = *this;
  for (std::size_t k = 1; k < word_.size(); ++k) {
    Itinerary r = rotated(k);
    if (r.word_ < best.word_) best = std::move(r);
  }
  return best;
}

Itinerary Itinerary::primitive() const {
  const std::size_t n = word_.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t k = p; k < n && repeats; ++k) repeats = word_[k] == word_[k - p];
    if (repeats) return Itinerary(std::vector<int>(word_.begin(), word_.begin() + static_cast<long>(p)));
  }
  return *this;
}

std::string Itinerary::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < word_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(word_[k] + 1);
  }
  return out;
}

bool gsv_check(const Itinerary& itinerary) {
  if (!itinerary.is_even()) return true;
  // Letters are formal symbols: each side must occur equally often at even
  // and at odd positions.
  std::map<int, long> balance;
  for (std::size_t k = 0; k < itinerary.period(); ++k) balance[itinerary[k]] += (k % 2 == 0) ? 1 : -1;
  return std::all_of(balance.begin(), balance.end(), [](const auto& entry) { return entry.second == 0; });
}

std::vector<Itinerary> enumerate_words(std::size_t sides, std::size_t period) {
  std::set<Itinerary> seen;
  if (period < 2 || sides < 2) return {};
  std::vector<int> w(period, 0);
  // Depth-first over words with distinct consecutive letters.
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == period) {
      if (w.back() == w.front()) return;
      seen.insert(Itinerary(w).canonical());
      return;
    }
    for (int c = 0; c < static_cast<int>(sides); ++c) {
      if (k > 0 && c == w[k - 1]) continue;
      w[k] = c;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return {seen.begin(), seen.end()};
}

}  // namespace pinball
