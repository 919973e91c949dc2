#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hilbq/rational.hpp"

namespace hilbq {

// Generalized partition: multiset of nonzero integer parts. Negative parts
// index creation operators, positive parts annihilation operators.
class GenPartition {
public:
    GenPartition() = default;

    static GenPartition of(std::initializer_list<int> parts);
    // Positive-part partition placed on the negative side, e.g. from a usual
    // partition mu build (... (-mu_i) ...).
    static GenPartition negative_of(const std::vector<int>& mu);

    void add(int part, int mult = 1);
    int mult(int part) const;
    const std::map<int, int>& mults() const { return m_; }
    bool empty() const { return m_.empty(); }

    int length() const;      // ell = sum of multiplicities
    int sum() const;         // signed sum of parts
    long norm_sq() const;    // sum of part^2 * mult
    Integer factorial() const;  // product of mult!
    int pos_weight() const;  // sum over positive parts
    int neg_weight() const;  // sum over |negative parts|

    // Multiplicity-wise difference; empty optional when any multiplicity
    // would go negative.
    std::optional<GenPartition> minus(const GenPartition& o) const;

    // Parts expanded with multiplicity, ascending (negatives first).
    std::vector<int> expanded() const;

    bool operator==(const GenPartition& o) const { return m_ == o.m_; }
    bool operator<(const GenPartition& o) const { return expanded() < o.expanded(); }
    std::string str() const;

private:
    std::map<int, int> m_;
};

// All generalized partitions with the given length, signed sum 0 and
// positive-part weight <= maxPosWeight, in canonical ascending order.
std::vector<GenPartition> enum_balanced(int length, int maxPosWeight);
// Memoized variant for hot loops; reference valid for the process lifetime.
const std::vector<GenPartition>& enum_balanced_cached(int length, int maxPosWeight);

// Partitions of n into exactly k positive parts (each as a part multiset).
std::vector<std::vector<int>> partitions_exact(int n, int k);
// Partitions of n (n >= 0) into any number of positive parts.
std::vector<std::vector<int>> partitions_of(int n);
// Ordered tuples of positive integers summing to n.
std::vector<std::vector<int>> compositions_of(int n);

}  // namespace hilbq
