#include "pipeserve/store.hpp"

#include <cstring>

#include "pipeserve/digest.hpp"

namespace pipeserve {

const ParamValue& ParameterBlob::decoded() const {
    std::call_once(decode_once_, [this] {
        decoded_ = std::make_unique<ParamValue>(decode_param(bytes_));
    });
    return *decoded_;
}

CachedVector CachedVector::from(const DataVector& v) {
    CachedVector c;
    c.kind = v.kind;
    c.length = v.length;
    c.nnz = v.nnz;
    switch (v.kind) {
        case VecKind::Dense:
            c.payload.resize(size_t(v.length) * 4);
            std::memcpy(c.payload.data(), v.dense_data(), c.payload.size());
            break;
        case VecKind::Sparse:
            c.payload.resize(size_t(v.nnz) * 8);
            std::memcpy(c.payload.data(), v.sparse_idx(), size_t(v.nnz) * 4);
            std::memcpy(c.payload.data() + size_t(v.nnz) * 4, v.sparse_val(), size_t(v.nnz) * 4);
            break;
        case VecKind::Tokens:
            c.payload.resize(size_t(v.length) * 8);
            std::memcpy(c.payload.data(), v.tokens(), c.payload.size());
            break;
        case VecKind::Text:
            c.payload.assign(v.text, v.text + v.length);
            break;
        case VecKind::Empty:
            break;
    }
    return c;
}

bool CachedVector::restore(DataVector& dst) const {
    dst.kind = kind;
    dst.length = length;
    dst.nnz = nnz;
    switch (kind) {
        case VecKind::Dense:
            if (dst.buf.capacity < length) return false;
            std::memcpy(dst.dense_data(), payload.data(), payload.size());
            return true;
        case VecKind::Sparse:
            if (dst.sparse_cap() < nnz) return false;
            std::memcpy(dst.sparse_idx(), payload.data(), size_t(nnz) * 4);
            std::memcpy(dst.sparse_val(), payload.data() + size_t(nnz) * 4, size_t(nnz) * 4);
            return true;
        case VecKind::Tokens:
            if (dst.token_capacity() < length) return false;
            std::memcpy(dst.tokens(), payload.data(), payload.size());
            return true;
        case VecKind::Text:
        case VecKind::Empty:
            return false;  // text never crosses stages via the cache
    }
    return false;
}

bool MaterializationCache::lookup(uint64_t stage_instance, const Checksum& input_digest,
                                  std::vector<CachedVector>& out) {
    std::lock_guard lk(mu_);
    auto it = entries_.find(Key{stage_instance, input_digest});
    if (it == entries_.end()) {
        misses_.fetch_add(1, std::memory_order_relaxed);
        return false;
    }
    lru_.splice(lru_.begin(), lru_, it->second.lru_pos);
    hits_.fetch_add(1, std::memory_order_relaxed);
    out = it->second.outputs;
    return true;
}

void MaterializationCache::insert(uint64_t stage_instance, const Checksum& input_digest,
                                  std::vector<CachedVector> outputs) {
    size_t sz = 0;
    for (const auto& o : outputs) sz += o.bytes();
    if (sz > budget_) return;  // oversized results are never cached

    std::lock_guard lk(mu_);
    Key key{stage_instance, input_digest};
    if (entries_.contains(key)) return;
    evict_locked(sz);
    lru_.push_front(key);
    Entry e;
    e.outputs = std::move(outputs);
    e.bytes = sz;
    e.lru_pos = lru_.begin();
    entries_.emplace(key, std::move(e));
    bytes_ += sz;
    if (bytes_ > peak_) peak_ = bytes_;
}

void MaterializationCache::evict_locked(size_t incoming) {
    while (bytes_ + incoming > budget_ && !lru_.empty()) {
        auto it = entries_.find(lru_.back());
        bytes_ -= it->second.bytes;
        entries_.erase(it);
        lru_.pop_back();
        evictions_.fetch_add(1, std::memory_order_relaxed);
    }
}

void MaterializationCache::clear() {
    std::lock_guard lk(mu_);
    entries_.clear();
    lru_.clear();
    bytes_ = 0;
}

size_t MaterializationCache::bytes() const {
    std::lock_guard lk(mu_);
    return bytes_;
}

size_t MaterializationCache::entries() const {
    std::lock_guard lk(mu_);
    return entries_.size();
}

size_t MaterializationCache::peak_bytes() const {
    std::lock_guard lk(mu_);
    return peak_;
}

Checksum ObjectStore::put(std::span<const uint8_t> bytes) {
    ParamType type = peek_param_type(bytes);  // throws on corrupt payloads
    Checksum sum = sha256(bytes);
    {
        std::unique_lock lk(mu_);
        ++put_calls_;
        auto it = blobs_.find(sum);
        if (it != blobs_.end()) {
            if (dedup_) {
                ++dedup_hits_;
                return sum;
            }
            it->second.push_back(std::make_shared<ParameterBlob>(
                sum, std::vector<uint8_t>(bytes.begin(), bytes.end()), type));
            return sum;
        }
        blobs_[sum].push_back(std::make_shared<ParameterBlob>(
            sum, std::vector<uint8_t>(bytes.begin(), bytes.end()), type));
    }
    return sum;
}

Checksum ObjectStore::put(const ParamValue& value) {
    auto bytes = encode_param(value);
    return put(std::span<const uint8_t>(bytes));
}

BlobPtr ObjectStore::get(const Checksum& sum) const {
    std::shared_lock lk(mu_);
    auto it = blobs_.find(sum);
    if (it == blobs_.end()) return nullptr;
    return it->second.front();
}

BlobPtr ObjectStore::require(const Checksum& sum) const {
    auto b = get(sum);
    if (!b) throw StoreError("parameter blob not found: " + sum.hex());
    return b;
}

bool ObjectStore::contains(const Checksum& sum) const {
    std::shared_lock lk(mu_);
    return blobs_.contains(sum);
}

void ObjectStore::add_plan_refs(const std::vector<Checksum>& refs) {
    std::shared_lock lk(mu_);
    for (const auto& r : refs) {
        auto it = blobs_.find(r);
        if (it != blobs_.end()) it->second.front()->add_ref();
    }
}

void ObjectStore::drop_plan_refs(const std::vector<Checksum>& refs) {
    std::shared_lock lk(mu_);
    for (const auto& r : refs) {
        auto it = blobs_.find(r);
        if (it != blobs_.end()) it->second.front()->drop_ref();
    }
}

StoreStats ObjectStore::stats() const {
    StoreStats s;
    {
        std::shared_lock lk(mu_);
        s.put_calls = put_calls_;
        s.dedup_hits = dedup_hits_;
        for (const auto& [sum, copies] : blobs_) {
            for (const auto& b : copies) {
                ++s.blob_count;
                s.total_bytes += b->size_bytes();
                const char* tn = param_type_name(b->type());
                ++s.count_by_type[tn];
                s.bytes_by_type[tn] += b->size_bytes();
            }
        }
    }
    s.cache_hits = cache_.hits();
    s.cache_misses = cache_.misses();
    s.cache_bytes = cache_.bytes();
    s.cache_entries = cache_.entries();
    s.cache_evictions = cache_.evictions();
    return s;
}

}  // namespace pipeserve
