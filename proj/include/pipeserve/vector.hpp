#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>

namespace pipeserve {

enum class VecKind : uint8_t { Empty = 0, Text = 1, Tokens = 2, Dense = 3, Sparse = 4 };

// A pooled float buffer. capacity is in floats; buffers are bucketed by
// power-of-two capacity classes and returned to their owning pool.
struct PoolBuffer {
    float* data = nullptr;
    uint32_t capacity = 0;
    uint8_t bucket = 0;

    explicit operator bool() const { return data != nullptr; }
};

struct TokenSpan {
    uint32_t offset;
    uint32_t length;
};

// Dense or sparse numeric vector (or token spans / raw text view) flowing
// between stages. Buffers come from a VectorPool; a vector is written only
// by the transform that produces it and is immutable afterward.
//
// Buffer layouts:
//   Dense:  data[0..length)
//   Sparse: indices as u32 at data[0..cap/2), values at data[cap/2..),
//           nnz entries each, indices strictly increasing
//   Tokens: TokenSpan pairs at data[0..length), offsets into the text input
//   Text:   view of externally owned bytes (no pool buffer)
class DataVector {
public:
    VecKind kind = VecKind::Empty;
    uint32_t length = 0;  // dense len | sparse logical len | token count | text bytes
    uint32_t nnz = 0;     // sparse only
    PoolBuffer buf;
    const char* text = nullptr;

    static DataVector text_view(std::string_view s) {
        DataVector v;
        v.kind = VecKind::Text;
        v.text = s.data();
        v.length = static_cast<uint32_t>(s.size());
        return v;
    }

    std::string_view as_text() const { return {text, length}; }

    float* dense_data() { return buf.data; }
    const float* dense_data() const { return buf.data; }
    std::span<const float> dense() const { return {buf.data, length}; }

    uint32_t sparse_cap() const { return buf.capacity / 2; }
    uint32_t* sparse_idx() { return reinterpret_cast<uint32_t*>(buf.data); }
    const uint32_t* sparse_idx() const { return reinterpret_cast<const uint32_t*>(buf.data); }
    float* sparse_val() { return buf.data + sparse_cap(); }
    const float* sparse_val() const { return buf.data + sparse_cap(); }

    TokenSpan* tokens() { return reinterpret_cast<TokenSpan*>(buf.data); }
    const TokenSpan* tokens() const { return reinterpret_cast<const TokenSpan*>(buf.data); }
    uint32_t token_capacity() const { return buf.capacity / 2; }

    // Bytes of live payload (for cache accounting).
    size_t payload_bytes() const {
        switch (kind) {
            case VecKind::Dense: return size_t(length) * 4;
            case VecKind::Sparse: return size_t(nnz) * 8;
            case VecKind::Tokens: return size_t(length) * 8;
            case VecKind::Text: return length;
            case VecKind::Empty: return 0;
        }
        return 0;
    }
};

}  // namespace pipeserve
