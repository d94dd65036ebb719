#include "cgl/characters.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

#include "cgl/error.hpp"

namespace cgl {

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

bool is_partition_of(const Partition& p, int n) {
    if (std::accumulate(p.begin(), p.end(), 0) != n) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0) return false;
        if (i > 0 && p[i] > p[i - 1]) return false;
    }
    return true;
}

Partition cycle_type(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    Partition mu;
    for (std::size_t s = 0; s < perm.size(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(perm[x])) {
            seen[x] = 1;
            ++len;
        }
        mu.push_back(len);
    }
    std::sort(mu.rbegin(), mu.rend());
    return mu;
}

double class_size(const Partition& mu) {
    int n = std::accumulate(mu.begin(), mu.end(), 0);
    double size = 1.0;
    for (int k = 2; k <= n; ++k) size *= k;
    std::map<int, int> mult;
    for (int p : mu) ++mult[p];
    for (auto [part, count] : mult) {
        for (int c = 0; c < count; ++c) size /= part;
        for (int k = 2; k <= count; ++k) size /= k;
    }
    return size;
}

namespace {

// Rim-hook removal on beta-sets: a hook of length r is a bead at b moving to
// b - r; its leg length is the number of beads strictly between.
long long mn_rec(const Partition& lambda, const Partition& mu, std::size_t next,
                 std::map<std::pair<Partition, std::size_t>, long long>& memo) {
    if (next == mu.size()) return lambda.empty() ? 1 : 0;
    auto key = std::make_pair(lambda, next);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const int r = mu[next];
    const int len = static_cast<int>(lambda.size());
    std::vector<int> beta(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (len - 1 - i);

    long long total = 0;
    for (int i = 0; i < len; ++i) {
        int b = beta[static_cast<std::size_t>(i)];
        int target = b - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int leg = 0;
        for (int x : beta)
            if (x > target && x < b) ++leg;
        std::vector<int> nb = beta;
        nb[static_cast<std::size_t>(i)] = target;
        std::sort(nb.rbegin(), nb.rend());
        Partition reduced;
        for (int k = 0; k < len; ++k) {
            int part = nb[static_cast<std::size_t>(k)] - (len - 1 - k);
            if (part > 0) reduced.push_back(part);
        }
        long long sub = mn_rec(reduced, mu, next + 1, memo);
        total += (leg % 2 ? -sub : sub);
    }
    memo.emplace(key, total);
    return total;
}

}  // namespace

long long irreducible_character(const Partition& lambda, const Partition& mu) {
    int n = std::accumulate(lambda.begin(), lambda.end(), 0);
    if (!is_partition_of(lambda, n) || std::accumulate(mu.begin(), mu.end(), 0) != n)
        throw DataError("irreducible_character", "partition sizes do not match");
    static std::mutex guard;
    static std::map<std::pair<Partition, Partition>, long long> cache;
    {
        std::lock_guard<std::mutex> lock(guard);
        if (auto it = cache.find({lambda, mu}); it != cache.end()) return it->second;
    }
    std::map<std::pair<Partition, std::size_t>, long long> memo;
    long long value = mn_rec(lambda, mu, 0, memo);
    std::lock_guard<std::mutex> lock(guard);
    cache.emplace(std::make_pair(lambda, mu), value);
    return value;
}

CharacterSpec CharacterSpec::parse(const std::string& text, int n) {
    if (text == "trivial") return trivial();
    if (text == "sign") return sign();
    if (text == "std" || text == "standard") {
        if (n < 2) throw DataError("character", "standard character needs n >= 2");
        return irreducible({n - 1, 1});
    }
    Partition lambda;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            lambda.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw DataError("character", "cannot parse '" + text + "'");
        }
    }
    return irreducible(lambda);
}

std::string CharacterSpec::describe() const {
    switch (kind) {
        case Kind::trivial: return "trivial";
        case Kind::sign: return "sign";
        case Kind::table: return "table";
        case Kind::irreducible: {
            std::string s = "irreducible(";
            for (std::size_t i = 0; i < lambda.size(); ++i) s += (i ? "," : "") + std::to_string(lambda[i]);
            return s + ")";
        }
    }
    return "unknown";
}

void validate_character(const CharacterSpec& chi, int n) {
    if (chi.kind == CharacterSpec::Kind::irreducible && !is_partition_of(chi.lambda, n))
        throw DataError("character", chi.describe() + " is not a partition of " + std::to_string(n));
    if (chi.kind == CharacterSpec::Kind::table)
        for (const auto& mu : partitions_of(n))
            if (!chi.table.count(mu)) throw DataError("character", "table misses a conjugacy class of S_" + std::to_string(n));
}

double character_value(const CharacterSpec& chi, const Partition& mu) {
    switch (chi.kind) {
        case CharacterSpec::Kind::trivial: return 1.0;
        case CharacterSpec::Kind::sign: {
            int parity = 0;
            for (int p : mu) parity += p - 1;
            return parity % 2 ? -1.0 : 1.0;
        }
        case CharacterSpec::Kind::irreducible: return static_cast<double>(irreducible_character(chi.lambda, mu));
        case CharacterSpec::Kind::table: {
            auto it = chi.table.find(mu);
            if (it == chi.table.end()) throw DataError("character", "no table value for cycle type");
            return it->second;
        }
    }
    return 0.0;
}

}  // namespace cgl
