#include "chromhopf/partition.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "chromhopf/error.hpp"

namespace chromhopf {

Partition::Partition(std::vector<int> values) : parts_(std::move(values))
{
    for (int v : parts_) {
        if (v < 1) {
            throw InvalidInput("partition parts must be positive, got " + std::to_string(v));
        }
        size_ += v;
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::multiplicity(int part) const
{
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
}

std::int64_t Partition::multiplicity_factorial() const
{
    std::int64_t result = 1;
    for (const auto& [part, mult] : multiplicities()) {
        for (int k = 2; k <= mult; ++k) {
            result *= k;
        }
    }
    return result;
}

std::vector<std::pair<int, int>> Partition::multiplicities() const
{
    std::vector<std::pair<int, int>> out;
    for (int v : parts_) {
        if (!out.empty() && out.back().first == v) {
            ++out.back().second;
        } else {
            out.emplace_back(v, 1);
        }
    }
    return out;
}

std::string Partition::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += std::to_string(parts_[i]);
    }
    return s + "]";
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b)
{
    if (a.size_ != b.size_) {
        return a.size_ <=> b.size_;
    }
    // reverse-lex: larger leading parts come first
    return std::lexicographical_compare_three_way(b.parts_.begin(), b.parts_.end(), a.parts_.begin(),
                                                  a.parts_.end());
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

Partition partition_union(const Partition& a, const Partition& b)
{
    std::vector<int> parts(a.parts().begin(), a.parts().end());
    parts.insert(parts.end(), b.parts().begin(), b.parts().end());
    return Partition(std::move(parts));
}

namespace {

void generate(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out)
{
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        generate(remaining - part, part, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<Partition> partitions_of(int n)
{
    if (n < 0) {
        throw InvalidInput("partitions_of needs n >= 0");
    }
    std::vector<Partition> out;
    std::vector<int> current;
    generate(n, n, current, out);
    return out;
}

std::vector<Partition> partitions_up_to(int max_size)
{
    std::vector<Partition> out;
    for (int n = 0; n <= max_size; ++n) {
        auto level = partitions_of(n);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::uint64_t partition_count(int n)
{
    if (n < 0) {
        return 0;
    }
    // table[k] = partitions of k into parts <= current bound
    std::vector<std::uint64_t> table(static_cast<std::size_t>(n) + 1, 0);
    table[0] = 1;
    for (int part = 1; part <= n; ++part) {
        for (int k = part; k <= n; ++k) {
            table[k] += table[k - part];
        }
    }
    return table[n];
}

Partition binary_partition(int n)
{
    if (n < 1) {
        throw InvalidInput("binary_partition needs n >= 1");
    }
    std::vector<int> parts;
    for (int bit = 30; bit >= 0; --bit) {
        if (n & (1 << bit)) {
            parts.push_back(1 << bit);
        }
    }
    return Partition(std::move(parts));
}

Partition ones(int k) { return Partition(std::vector<int>(static_cast<std::size_t>(k), 1)); }

} // namespace chromhopf
