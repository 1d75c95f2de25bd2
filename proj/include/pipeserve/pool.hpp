#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "pipeserve/vector.hpp"

namespace pipeserve {

// Bump allocator for per-stage-execution scratch (token gather buffers,
// n-gram keys, internal chain intermediates). Blocks are retained across
// resets; growth only happens while a workload is still warming up.
class ScratchArena {
public:
    explicit ScratchArena(size_t initial_block = 64 * 1024) : block_size_(initial_block) {}

    void* alloc(size_t bytes, size_t align = 16);

    template <typename T>
    T* alloc_array(size_t count) {
        return static_cast<T*>(alloc(count * sizeof(T), alignof(T)));
    }

    void reset() {
        block_idx_ = 0;
        offset_ = 0;
    }

    uint64_t growth_events() const { return growth_events_; }
    size_t reserved_bytes() const { return reserved_; }

private:
    struct Block {
        std::unique_ptr<char[]> mem;
        size_t size;
    };

    size_t block_size_;
    std::vector<Block> blocks_;
    size_t block_idx_ = 0;
    size_t offset_ = 0;
    uint64_t growth_events_ = 0;
    size_t reserved_ = 0;
};

struct PoolStats {
    uint64_t growth_events = 0;   // buffers newly allocated from the heap
    uint64_t acquires = 0;
    uint64_t releases = 0;
    uint64_t outstanding = 0;
    uint64_t reserved_bytes = 0;
    uint64_t high_water_bytes = 0;  // peak bytes simultaneously acquired
};

// Per-worker pool of float buffers bucketed by power-of-two capacity.
// Acquisition happens on the owning worker; releases may arrive from the
// worker that completed an instance's final stage, so free lists are
// lock-guarded. With pooling disabled every acquire is a fresh heap
// allocation (the ablation baseline).
class VectorPool {
public:
    explicit VectorPool(bool pooling_enabled = true) : pooling_(pooling_enabled) {}
    ~VectorPool();

    VectorPool(const VectorPool&) = delete;
    VectorPool& operator=(const VectorPool&) = delete;

    PoolBuffer acquire(uint32_t min_floats);
    void release(PoolBuffer buf);

    PoolStats stats() const;
    bool pooling_enabled() const { return pooling_; }

    static constexpr uint32_t kMinBucketShift = 6;   // 64 floats
    static constexpr uint32_t kMaxBucketShift = 28;  // 256M floats

private:
    static uint8_t bucket_for(uint32_t min_floats);

    bool pooling_;
    mutable std::mutex mu_;
    std::vector<float*> free_[kMaxBucketShift - kMinBucketShift + 1];
    PoolStats stats_;
    uint64_t live_bytes_ = 0;
};

}  // namespace pipeserve
