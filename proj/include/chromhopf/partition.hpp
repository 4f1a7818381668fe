#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace chromhopf {

/// Integer partition: a weakly decreasing sequence of positive parts.
///
/// Ordering is the canonical output order used everywhere: by size |lambda| ascending,
/// then reverse-lexicographic within a size, so partitions_of(4) lists
/// (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
class Partition {
public:
    Partition() = default;
    /// Sorts the values; throws InvalidInput on entries < 1.
    explicit Partition(std::vector<int> values);
    Partition(std::initializer_list<int> values) : Partition(std::vector<int>(values)) {}

    std::span<const int> parts() const { return parts_; }
    int operator[](std::size_t i) const { return parts_[i]; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    int size() const { return size_; }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }

    /// r_i(lambda): number of parts equal to i.
    int multiplicity(int part) const;
    /// prod_i r_i(lambda)!, the m -> m~ scale factor.
    std::int64_t multiplicity_factorial() const;
    /// (part, multiplicity) pairs, largest part first.
    std::vector<std::pair<int, int>> multiplicities() const;

    /// [3,1] style text.
    std::string to_string() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

private:
    std::vector<int> parts_;
    int size_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

/// Multiset union of parts, lambda ⊔ mu.
Partition partition_union(const Partition& a, const Partition& b);

/// All partitions of n in canonical order.
std::vector<Partition> partitions_of(int n);

/// All partitions of every size 0..max_size in canonical order.
std::vector<Partition> partitions_up_to(int max_size);

/// Number of partitions of n, by the standard largest-part recurrence.
std::uint64_t partition_count(int n);

/// Partition of n whose parts are the powers of two in the binary expansion of n.
Partition binary_partition(int n);

/// (1^k) as a Partition.
Partition ones(int k);

} // namespace chromhopf
