#include "pipeserve/pool.hpp"

#include <bit>
#include <stdexcept>

namespace pipeserve {

void* ScratchArena::alloc(size_t bytes, size_t align) {
    if (bytes == 0) bytes = 1;
    while (true) {
        if (block_idx_ < blocks_.size()) {
            Block& b = blocks_[block_idx_];
            size_t aligned = (offset_ + align - 1) & ~(align - 1);
            if (aligned + bytes <= b.size) {
                offset_ = aligned + bytes;
                return b.mem.get() + aligned;
            }
            ++block_idx_;
            offset_ = 0;
            continue;
        }
        size_t sz = block_size_;
        while (sz < bytes + align) sz *= 2;
        block_size_ = sz * 2;  // geometric growth keeps block count small
        blocks_.push_back({std::make_unique<char[]>(sz), sz});
        ++growth_events_;
        reserved_ += sz;
    }
}

uint8_t VectorPool::bucket_for(uint32_t min_floats) {
    uint32_t n = min_floats < (1u << kMinBucketShift) ? (1u << kMinBucketShift) : min_floats;
    uint32_t shift = 32 - std::countl_zero(n - 1);  // ceil log2
    if (shift < kMinBucketShift) shift = kMinBucketShift;
    if (shift > kMaxBucketShift) throw std::length_error("vector capacity exceeds pool maximum");
    return static_cast<uint8_t>(shift - kMinBucketShift);
}

PoolBuffer VectorPool::acquire(uint32_t min_floats) {
    uint8_t b = bucket_for(min_floats);
    uint32_t cap = 1u << (b + kMinBucketShift);
    std::lock_guard lk(mu_);
    ++stats_.acquires;
    ++stats_.outstanding;
    float* data = nullptr;
    if (pooling_ && !free_[b].empty()) {
        data = free_[b].back();
        free_[b].pop_back();
    } else {
        data = new float[cap];
        ++stats_.growth_events;
        stats_.reserved_bytes += size_t(cap) * 4;
        if (pooling_) free_[b].reserve(free_[b].size() + 1);  // releases never reallocate
    }
    live_bytes_ += size_t(cap) * 4;
    if (live_bytes_ > stats_.high_water_bytes) stats_.high_water_bytes = live_bytes_;
    return PoolBuffer{data, cap, b};
}

void VectorPool::release(PoolBuffer buf) {
    if (!buf) return;
    std::lock_guard lk(mu_);
    ++stats_.releases;
    --stats_.outstanding;
    live_bytes_ -= size_t(buf.capacity) * 4;
    if (pooling_) {
        free_[buf.bucket].push_back(buf.data);
    } else {
        delete[] buf.data;
        stats_.reserved_bytes -= size_t(buf.capacity) * 4;
    }
}

PoolStats VectorPool::stats() const {
    std::lock_guard lk(mu_);
    return stats_;
}

VectorPool::~VectorPool() {
    for (auto& lst : free_) {
        for (float* p : lst) delete[] p;
    }
}

}  // namespace pipeserve
