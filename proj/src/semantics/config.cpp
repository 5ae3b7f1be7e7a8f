#include <algorithm>
#include <numeric>
#include <sstream>

#include "fmu/pretty.hpp"
#include "fmu/semantics.hpp"

namespace fmu {
namespace {

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

size_t config_hash(const Config& c) {
  size_t h = c.term->hash;
  for (uint64_t v : c.heap) h = mix(h, v);
  return mix(h, c.heap.size());
}

}  // namespace

Config make_config(const TermPtr& term, Heap heap) {
  Config c;
  if (heap.empty()) {
    c.term = term;
    c.hash = config_hash(c);
    return c;
  }
  std::vector<uint64_t> live = locations_in(term);
  const uint64_t none = ~0ULL;
  std::vector<uint64_t> mapping(heap.size(), none);
  uint64_t next = 0;
  for (uint64_t l : live) {
    if (l >= heap.size()) throw std::out_of_range("dangling location in config");
    mapping[l] = next++;
  }
  std::vector<uint64_t> garbage;
  for (uint64_t i = 0; i < heap.size(); ++i)
    if (mapping[i] == none) garbage.push_back(i);
  std::stable_sort(garbage.begin(), garbage.end(), [&](uint64_t a, uint64_t b) { return heap[a] < heap[b]; });
  for (uint64_t g : garbage) mapping[g] = next++;

  bool identity = true;
  for (uint64_t i = 0; i < mapping.size(); ++i) identity = identity && mapping[i] == i;
  if (identity) {
    c.term = term;
    c.heap = std::move(heap);
  } else {
    c.heap.resize(heap.size());
    for (uint64_t i = 0; i < heap.size(); ++i) c.heap[mapping[i]] = heap[i];
    c.term = rename_locations(term, mapping);
  }
  c.hash = config_hash(c);
  return c;
}

bool config_equal(const Config& a, const Config& b) {
  return a.hash == b.hash && a.heap == b.heap && term_equal(a.term, b.term);
}

std::string pretty_config(const Config& c) {
  if (c.heap.empty()) return pretty(c.term);
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < c.heap.size(); ++i) os << (i ? ", " : "") << "l" << i << "=" << c.heap[i];
  os << "} " << pretty(c.term);
  return os.str();
}

Config value_key(const Config& c) {
  size_t live = locations_in(c.term).size();
  Heap h(c.heap.begin(), c.heap.begin() + std::min(live, c.heap.size()));
  return make_config(c.term->has_ann ? erase(c.term) : c.term, std::move(h));
}

const char* kind_name(StepKind k) {
  switch (k) {
    case StepKind::Choice:
      return "choice";
    case StepKind::UnfoldFold:
      return "unfold-fold";
    default:
      return "other";
  }
}

}  // namespace fmu
