#pragma once

#include <map>
#include <string>
#include <vector>

namespace cgl {

// Nonincreasing positive parts.
using Partition = std::vector<int>;

std::vector<Partition> partitions_of(int n);
bool is_partition_of(const Partition& p, int n);

// Cycle type of a permutation given as images 0..n-1, sorted nonincreasing.
Partition cycle_type(const std::vector<int>& perm);

// Size of the conjugacy class of S_n with the given cycle type.
double class_size(const Partition& mu);

// chi^lambda(mu) by the Murnaghan-Nakayama rule (memoized).
long long irreducible_character(const Partition& lambda, const Partition& mu);

struct CharacterSpec {
    enum class Kind { trivial, sign, irreducible, table };

    Kind kind = Kind::trivial;
    Partition lambda;                   // irreducible
    std::map<Partition, double> table;  // value per cycle type

    static CharacterSpec trivial() { return {Kind::trivial, {}, {}}; }
    static CharacterSpec sign() { return {Kind::sign, {}, {}}; }
    static CharacterSpec irreducible(Partition lambda) { return {Kind::irreducible, std::move(lambda), {}}; }
    static CharacterSpec from_table(std::map<Partition, double> t) { return {Kind::table, {}, std::move(t)}; }

    // "trivial", "sign", "std" (= (n-1,1)) or a partition such as "3,1,1".
    static CharacterSpec parse(const std::string& text, int n);

    std::string describe() const;
};

// Throws DataError when the character is not defined on S_n.
void validate_character(const CharacterSpec& chi, int n);

double character_value(const CharacterSpec& chi, const Partition& mu);

}  // namespace cgl
