#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <deque>
#include <fstream>
#include <future>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apps/errors.hpp"
#include "apps/residue.hpp"

namespace apps {

inline constexpr std::uint64_t kMaxSieveBound = std::uint64_t{1} << 62;
inline constexpr std::uint32_t kDefaultSegmentOdds = 1u << 16;
inline constexpr std::uint32_t kMinSegmentOdds = 1024;

// Exact integer square root.
inline std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

struct SieveConfig {
    std::uint64_t limit = 0;                         // inclusive upper bound on primes
    std::uint32_t segment_size = kDefaultSegmentOdds;  // odd numbers per segment
    unsigned worker_count = 1;

    void validate() const {
        if (limit < 2) throw Error::validation("sieve limit must be at least 2");
        if (limit >= kMaxSieveBound)
            throw Error::bound("sieve limit " + std::to_string(limit) + " exceeds supported bound");
        if (segment_size < kMinSegmentOdds)
            throw Error::validation("segment_size must be at least 1024 odd numbers");
        if (worker_count < 1) throw Error::validation("worker_count must be at least 1");
    }

    SieveConfig with_limit(std::uint64_t new_limit) const {
        SieveConfig c = *this;
        c.limit = new_limit;
        return c;
    }

    // Numbers covered per segment: segment_size odds plus as many evens.
    std::uint64_t span() const { return 2 * static_cast<std::uint64_t>(segment_size); }
};

// Knobs without the limit, for call sites that derive the bound themselves.
struct SieveOptions {
    std::uint32_t segment_size = kDefaultSegmentOdds;
    unsigned worker_count = 1;

    SieveConfig config_for(std::uint64_t limit) const {
        return SieveConfig{std::max<std::uint64_t>(limit, 2), segment_size, worker_count};
    }
};

// Simple in-memory sieve, used to seed base primes up to sqrt(limit).
inline std::vector<std::uint64_t> simple_sieve(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    if (n < 2) return primes;
    std::vector<std::uint8_t> composite(static_cast<std::size_t>(n) + 1, 0);
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (!composite[static_cast<std::size_t>(i)])
            for (std::uint64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = 1;
    for (std::uint64_t i = 2; i <= n; ++i)
        if (!composite[static_cast<std::size_t>(i)]) primes.push_back(i);
    return primes;
}

// Primality flags for the window [low, high]: bit i <=> (low + i) is prime.
class SegmentBits {
public:
    SegmentBits() = default;
    SegmentBits(std::uint64_t low, std::uint64_t high)
        : low_(low), width_(high - low + 1), words_((width_ + 63) / 64, ~std::uint64_t{0}) {}

    std::uint64_t low() const { return low_; }
    std::uint64_t high() const { return low_ + width_ - 1; }
    std::uint64_t width() const { return width_; }

    bool test(std::uint64_t offset) const {
        return (words_[offset >> 6] >> (offset & 63)) & 1u;
    }
    void clear(std::uint64_t offset) { words_[offset >> 6] &= ~(std::uint64_t{1} << (offset & 63)); }
    void set(std::uint64_t offset) { words_[offset >> 6] |= std::uint64_t{1} << (offset & 63); }

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    std::uint64_t count() const {
        std::uint64_t total = 0;
        for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
        return total;
    }

    // Visit set bits in ascending order as absolute values low + i.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w != 0) {
                const int b = std::countr_zero(w);
                w &= w - 1;
                fn(low_ + (static_cast<std::uint64_t>(wi) << 6) + static_cast<std::uint64_t>(b));
            }
        }
    }

private:
    std::uint64_t low_ = 0;
    std::uint64_t width_ = 0;
    std::vector<std::uint64_t> words_;

    friend SegmentBits sieve_segment(std::uint64_t, std::uint64_t, std::span<const std::uint64_t>);
};

// Window sieve over [low, high]. base_primes must contain every prime up to
// floor(sqrt(high)); evens are handled by pattern, odd primes cross off their
// odd multiples only. Exact by construction, no probabilistic tests anywhere.
inline SegmentBits sieve_segment(std::uint64_t low, std::uint64_t high,
                                 std::span<const std::uint64_t> base_primes) {
    if (low < 2) throw Error::validation("sieve_segment requires low >= 2");
    if (low > high) throw Error::validation("sieve_segment requires low <= high");
    if (high >= kMaxSieveBound)
        throw Error::bound("sieve_segment bound " + std::to_string(high) + " exceeds supported range");

    SegmentBits bits(low, high);
    auto words = bits.words();

    // Evens out first: keep bits whose absolute value (low + i) is odd.
    const std::uint64_t odd_mask =
        (low & 1) ? 0x5555555555555555ull : 0xAAAAAAAAAAAAAAAAull;
    for (auto& w : words) w &= odd_mask;
    if (low <= 2 && 2 <= high) bits.set(2 - low);

    // Mask out bits past the window end.
    const std::uint64_t tail = bits.width() & 63;
    if (tail != 0) words[words.size() - 1] &= (~std::uint64_t{0}) >> (64 - tail);

    for (std::uint64_t p : base_primes) {
        if (p < 3) continue;
        if (p * p > high) break;
        std::uint64_t q = ((low + p - 1) / p) * p;
        q = std::max(q, p * p);
        if ((q & 1) == 0) q += p;  // evens are already gone
        for (; q <= high; q += 2 * p) bits.clear(q - low);
    }
    return bits;
}

namespace detail {

// Produces segments of the range [2, limit] in index order. Segments are
// aligned to absolute multiples of span so that a resumed stream sees exactly
// the same windows as an uninterrupted one. With worker_count > 1 a batch of
// upcoming segments is sieved concurrently; consumption order (and therefore
// every downstream accumulation) never depends on scheduling.
class SegmentPump {
public:
    SegmentPump(const SieveConfig& cfg, std::uint64_t start_from)
        : cfg_(cfg), span_(cfg.span()) {
        cfg_.validate();
        start_from = std::max<std::uint64_t>(start_from, 2);
        base_ = std::make_shared<std::vector<std::uint64_t>>(simple_sieve(isqrt_u64(cfg_.limit)));
        next_segment_ = start_from / span_;
        last_segment_ = cfg_.limit / span_;
    }

    // nullopt when the range is exhausted.
    std::optional<SegmentBits> next() {
        if (!ready_.empty()) {
            SegmentBits out = std::move(ready_.front());
            ready_.pop_front();
            return out;
        }
        if (next_segment_ > last_segment_) return std::nullopt;
        const unsigned batch = std::min<std::uint64_t>(cfg_.worker_count,
                                                       last_segment_ - next_segment_ + 1);
        if (batch <= 1) {
            return make_segment(next_segment_++);
        }
        std::vector<std::future<SegmentBits>> jobs;
        jobs.reserve(batch - 1);
        for (unsigned i = 1; i < batch; ++i) {
            const std::uint64_t seg = next_segment_ + i;
            jobs.push_back(std::async(std::launch::async, [this, seg] { return make_segment(seg); }));
        }
        SegmentBits first = make_segment(next_segment_);
        for (auto& job : jobs) ready_.push_back(job.get());
        next_segment_ += batch;
        return first;
    }

private:
    SegmentBits make_segment(std::uint64_t seg) const {
        const std::uint64_t low = std::max<std::uint64_t>(seg * span_, 2);
        const std::uint64_t high = std::min(cfg_.limit, seg * span_ + span_ - 1);
        return sieve_segment(low, high, *base_);
    }

    SieveConfig cfg_;
    std::uint64_t span_;
    std::shared_ptr<std::vector<std::uint64_t>> base_;
    std::uint64_t next_segment_ = 0;
    std::uint64_t last_segment_ = 0;
    std::deque<SegmentBits> ready_;
};

}  // namespace detail

// Resumable, strictly increasing stream of primes <= config.limit, optionally
// restricted to a residue class. Single consumer; the parallel sieving behind
// it is invisible to the caller.
class PrimeStream {
public:
    explicit PrimeStream(const SieveConfig& cfg,
                         ResidueClass filter = ResidueClass::all_primes())
        : PrimeStream(cfg, filter, /*start_from=*/2) {}

    // Continue a checkpointed stream: yields the primes > cursor, identically
    // to the tail of an unpaused stream.
    static PrimeStream resume(const SieveConfig& cfg, ResidueClass filter, std::uint64_t cursor) {
        return PrimeStream(cfg, filter, cursor + 1);
    }

    const SieveConfig& config() const { return cfg_; }
    const ResidueClass& filter() const { return filter_; }
    std::uint64_t cursor() const { return cursor_; }

    std::optional<std::uint64_t> next() {
        while (true) {
            if (!current_) {
                auto seg = pump_.next();
                if (!seg) return std::nullopt;
                current_ = std::move(*seg);
                word_index_ = 0;
                pending_ = current_->words().empty() ? 0 : current_->words()[0];
                mask_low_bits();
            }
            while (true) {
                while (pending_ == 0) {
                    if (++word_index_ >= current_->words().size()) break;
                    pending_ = current_->words()[word_index_];
                }
                if (pending_ == 0) break;
                const int b = std::countr_zero(pending_);
                pending_ &= pending_ - 1;
                const std::uint64_t p = current_->low() + (static_cast<std::uint64_t>(word_index_) << 6) +
                                        static_cast<std::uint64_t>(b);
                if (p > cfg_.limit) return std::nullopt;
                if (filter_.contains(p)) {
                    cursor_ = p;
                    return p;
                }
            }
            current_.reset();
        }
    }

    // Drain the stream through fn(p). Same order as repeated next().
    template <class Fn>
    void for_each(Fn&& fn) {
        while (auto p = next()) fn(*p);
    }

private:
    PrimeStream(const SieveConfig& cfg, ResidueClass filter, std::uint64_t start_from)
        : cfg_(cfg), filter_(filter), start_from_(std::max<std::uint64_t>(start_from, 2)),
          pump_(cfg, start_from_) {
        cfg_.validate();
    }

    // Drop bits below the resume point in the first segment.
    void mask_low_bits() {
        if (!current_ || current_->low() >= start_from_) return;
        const std::uint64_t skip = start_from_ - current_->low();
        auto words = current_->words();
        const std::size_t full = static_cast<std::size_t>(skip >> 6);
        for (std::size_t i = 0; i < full && i < words.size(); ++i) words[i] = 0;
        if (full < words.size() && (skip & 63) != 0) words[full] &= (~std::uint64_t{0}) << (skip & 63);
        pending_ = words.empty() ? 0 : words[0];
    }

    SieveConfig cfg_;
    ResidueClass filter_;
    std::uint64_t start_from_;
    detail::SegmentPump pump_;
    std::optional<SegmentBits> current_;
    std::size_t word_index_ = 0;
    std::uint64_t pending_ = 0;
    std::uint64_t cursor_ = 0;
};

// ---------------------------------------------------------------------------
// Prime cache file: header {magic "APPS", u32 version = 1, u64 limit} then
// every prime <= limit as little-endian u64. A pure accelerator: consumers
// must produce identical results whether or not a cache is used.
// ---------------------------------------------------------------------------

inline constexpr char kPrimeCacheMagic[4] = {'A', 'P', 'P', 'S'};
inline constexpr std::uint32_t kPrimeCacheVersion = 1;

namespace detail {
inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
inline void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
inline std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}
inline std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}
}  // namespace detail

struct PrimeCacheData {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
};

inline void write_prime_cache(const std::string& path, const SieveConfig& cfg) {
    cfg.validate();
    std::string blob;
    blob.append(kPrimeCacheMagic, 4);
    detail::put_u32(blob, kPrimeCacheVersion);
    detail::put_u64(blob, cfg.limit);
    PrimeStream stream(cfg);
    stream.for_each([&](std::uint64_t p) { detail::put_u64(blob, p); });
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error::bound("cannot open cache file for writing: " + path);
    out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
    if (!out) throw Error::bound("short write to cache file: " + path);
}

inline PrimeCacheData read_prime_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error::validation("cannot open cache file: " + path);
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (blob.size() < 16) throw Error::validation("cache file truncated: " + path);
    const auto* bytes = reinterpret_cast<const unsigned char*>(blob.data());
    if (std::memcmp(bytes, kPrimeCacheMagic, 4) != 0)
        throw Error::validation("cache file has wrong magic: " + path);
    const std::uint32_t version = detail::get_u32(bytes + 4);
    if (version != kPrimeCacheVersion)
        throw Error::validation("cache file has unsupported version " + std::to_string(version));
    if ((blob.size() - 16) % 8 != 0) throw Error::validation("cache file truncated: " + path);
    PrimeCacheData data;
    data.limit = detail::get_u64(bytes + 8);
    const std::size_t count = (blob.size() - 16) / 8;
    data.primes.reserve(count);
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t p = detail::get_u64(bytes + 16 + 8 * i);
        if (p <= prev || p > data.limit)
            throw Error::validation("cache file contents out of order or out of range: " + path);
        data.primes.push_back(p);
        prev = p;
    }
    return data;
}

// Uniform way to walk primes in ascending order, either freshly sieved or out
// of a loaded cache. All statistics code consumes primes through this.
class PrimeProvider {
public:
    explicit PrimeProvider(const SieveConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

    PrimeProvider(std::vector<std::uint64_t> primes, std::uint64_t limit)
        : cfg_{limit, kDefaultSegmentOdds, 1},
          cached_(std::make_shared<std::vector<std::uint64_t>>(std::move(primes))) {
        cfg_.validate();
    }

    static PrimeProvider from_cache(PrimeCacheData data) {
        return PrimeProvider(std::move(data.primes), data.limit);
    }

    std::uint64_t limit() const { return cfg_.limit; }
    bool cache_backed() const { return cached_ != nullptr; }

    // fn(p) for every prime in [from, upto], ascending.
    template <class Fn>
    void enumerate(std::uint64_t from, std::uint64_t upto, Fn&& fn) const {
        if (upto > cfg_.limit)
            throw Error::bound("prime enumeration to " + std::to_string(upto) +
                               " exceeds provider limit " + std::to_string(cfg_.limit));
        if (upto < from || upto < 2) return;
        if (cached_) {
            const auto& v = *cached_;
            auto it = std::lower_bound(v.begin(), v.end(), std::max<std::uint64_t>(from, 2));
            for (; it != v.end() && *it <= upto; ++it) fn(*it);
            return;
        }
        detail::SegmentPump pump(cfg_.with_limit(upto), std::max<std::uint64_t>(from, 2));
        const std::uint64_t lo = std::max<std::uint64_t>(from, 2);
        while (auto seg = pump.next()) {
            seg->for_each([&](std::uint64_t p) {
                if (p >= lo && p <= upto) fn(p);
            });
            if (seg->high() >= upto) break;
        }
    }

    template <class Fn>
    void enumerate(std::uint64_t upto, Fn&& fn) const {
        enumerate(2, upto, std::forward<Fn>(fn));
    }

private:
    SieveConfig cfg_;
    std::shared_ptr<std::vector<std::uint64_t>> cached_;
};

}  // namespace apps
