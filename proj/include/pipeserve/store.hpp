#pragma once

#include <atomic>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "pipeserve/params.hpp"
#include "pipeserve/types.hpp"
#include "pipeserve/vector.hpp"

namespace pipeserve {

// Immutable, content-addressed parameter payload. Shared by every plan that
// references the same bytes; the typed view is decoded once on first use.
class ParameterBlob {
public:
    ParameterBlob(Checksum sum, std::vector<uint8_t> bytes, ParamType type)
        : checksum_(sum), bytes_(std::move(bytes)), type_(type) {}

    const Checksum& checksum() const { return checksum_; }
    std::span<const uint8_t> bytes() const { return bytes_; }
    ParamType type() const { return type_; }
    size_t size_bytes() const { return bytes_.size(); }

    // Lazily decoded typed view; thread-safe, built at most once.
    const ParamValue& decoded() const;

    void add_ref() const { refcount_.fetch_add(1, std::memory_order_relaxed); }
    void drop_ref() const { refcount_.fetch_sub(1, std::memory_order_relaxed); }
    uint32_t refcount() const { return refcount_.load(std::memory_order_relaxed); }

private:
    Checksum checksum_;
    std::vector<uint8_t> bytes_;
    ParamType type_;
    mutable std::once_flag decode_once_;
    mutable std::unique_ptr<ParamValue> decoded_;
    mutable std::atomic<uint32_t> refcount_{0};
};

using BlobPtr = std::shared_ptr<const ParameterBlob>;

struct StoreStats {
    uint64_t blob_count = 0;
    uint64_t total_bytes = 0;
    uint64_t put_calls = 0;
    uint64_t dedup_hits = 0;  // puts answered by an existing blob
    std::map<std::string, uint64_t> count_by_type;
    std::map<std::string, uint64_t> bytes_by_type;
    uint64_t cache_hits = 0;
    uint64_t cache_misses = 0;
    uint64_t cache_bytes = 0;
    uint64_t cache_entries = 0;
    uint64_t cache_evictions = 0;
};

// Self-contained copy of a stage output held by the materialization cache.
struct CachedVector {
    VecKind kind = VecKind::Empty;
    uint32_t length = 0;
    uint32_t nnz = 0;
    std::vector<uint8_t> payload;

    static CachedVector from(const DataVector& v);
    // Copies the cached payload into dst's pooled buffer. Returns false when
    // the buffer is too small (callers size buffers from plan stats).
    bool restore(DataVector& dst) const;
    size_t bytes() const { return payload.size() + sizeof(CachedVector); }
};

// Sub-plan materialization: outputs of shared head stages keyed by the
// input record digest, LRU-evicted under a byte budget.
class MaterializationCache {
public:
    explicit MaterializationCache(size_t budget_bytes) : budget_(budget_bytes) {}

    bool lookup(uint64_t stage_instance, const Checksum& input_digest,
                std::vector<CachedVector>& out);
    void insert(uint64_t stage_instance, const Checksum& input_digest,
                std::vector<CachedVector> outputs);
    void clear();

    uint64_t hits() const { return hits_.load(std::memory_order_relaxed); }
    uint64_t misses() const { return misses_.load(std::memory_order_relaxed); }
    uint64_t evictions() const { return evictions_.load(std::memory_order_relaxed); }
    size_t bytes() const;
    size_t entries() const;
    size_t budget() const { return budget_; }
    size_t peak_bytes() const;

private:
    struct Key {
        uint64_t instance;
        Checksum digest;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            return k.instance * 0x9e3779b97f4a7c15ull ^ ChecksumHash{}(k.digest);
        }
    };
    struct Entry {
        std::vector<CachedVector> outputs;
        size_t bytes = 0;
        std::list<Key>::iterator lru_pos;
    };

    void evict_locked(size_t incoming);

    mutable std::mutex mu_;
    size_t budget_;
    size_t bytes_ = 0;
    size_t peak_ = 0;
    std::list<Key> lru_;  // front = most recent
    std::unordered_map<Key, Entry, KeyHash> entries_;
    std::atomic<uint64_t> hits_{0}, misses_{0}, evictions_{0};
};

// Content-addressed store of immutable operator parameters shared across
// plans. With dedup disabled (memory-scenario baseline) every put stores a
// fresh copy so accounting reflects per-plan duplication.
class ObjectStore {
public:
    explicit ObjectStore(bool dedup_enabled = true, size_t cache_budget = 64u << 20)
        : dedup_(dedup_enabled), cache_(cache_budget) {}

    // Validates and stores canonical payload bytes; idempotent under dedup.
    Checksum put(std::span<const uint8_t> bytes);
    Checksum put(const ParamValue& value);

    BlobPtr get(const Checksum& sum) const;      // nullptr when absent
    BlobPtr require(const Checksum& sum) const;  // throws StoreError when absent
    bool contains(const Checksum& sum) const;

    void add_plan_refs(const std::vector<Checksum>& refs);
    void drop_plan_refs(const std::vector<Checksum>& refs);

    StoreStats stats() const;
    bool dedup_enabled() const { return dedup_; }

    MaterializationCache& materialization() { return cache_; }
    const MaterializationCache& materialization() const { return cache_; }

private:
    bool dedup_;
    mutable std::shared_mutex mu_;
    std::unordered_map<Checksum, std::vector<BlobPtr>> blobs_;  // >1 copy only when dedup off
    uint64_t put_calls_ = 0;
    uint64_t dedup_hits_ = 0;
    MaterializationCache cache_;
};

}  // namespace pipeserve
