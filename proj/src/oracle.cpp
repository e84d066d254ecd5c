#include "sublis/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace sublis {

SequenceOracle::SequenceOracle(std::vector<u64> values) : values_(std::move(values)) {
    n_ = values_.size();
    valbound_ = 1;
    for (u64 v : values_) {
        if (v == 0) throw std::invalid_argument("oracle: values must be >= 1");
        valbound_ = std::max(valbound_, v);
    }
    seen_ = std::vector<std::atomic<bool>>(n_ + 1);
}

u64 SequenceOracle::query(u64 x) const {
    if (x == 0 || x > n_) throw std::out_of_range("oracle: index out of domain");
    bool first = !seen_[x].exchange(true, std::memory_order_relaxed);
    if (first) distinct_.fetch_add(1, std::memory_order_relaxed);
    if (first || count_revisits_.load(std::memory_order_relaxed))
        total_.fetch_add(1, std::memory_order_relaxed);
    return values_[x - 1];
}

u64 SequenceOracle::raw_value(u64 x) const {
    if (x == 0 || x > n_) throw std::out_of_range("oracle: index out of domain");
    return values_[x - 1];
}

void SequenceOracle::reset_counters() const {
    total_.store(0, std::memory_order_relaxed);
    distinct_.store(0, std::memory_order_relaxed);
    for (auto& s : seen_) s.store(false, std::memory_order_relaxed);
}

std::vector<u64> sample_indices(RandomStream& stream, const IndexInterval& iv, u64 count) {
    if (iv.width() == 0) throw std::invalid_argument("sample_indices: empty interval");
    std::vector<u64> out;
    out.reserve(count);
    for (u64 i = 0; i < count; ++i) out.push_back(stream.next_index(iv));
    return out;
}

std::vector<u64> sample_indices_distinct(RandomStream& stream, const IndexInterval& iv, u64 count) {
    u64 w = iv.width();
    if (count > w) throw std::invalid_argument("sample_indices_distinct: count exceeds width");
    // Floyd's sampling: for j in [w-count, w), draw t in [0, j]; insert t or j.
    std::vector<u64> picked;
    picked.reserve(count);
    auto contains = [&](u64 v) { return std::find(picked.begin(), picked.end(), v) != picked.end(); };
    if (count > w / 4) {
        // Dense case: partial Fisher-Yates over the whole interval.
        std::vector<u64> idx(w);
        for (u64 i = 0; i < w; ++i) idx[i] = iv.x_l + 1 + i;
        for (u64 i = 0; i < count; ++i) {
            u64 j = i + stream.next_below(w - i);
            std::swap(idx[i], idx[j]);
        }
        idx.resize(count);
        std::sort(idx.begin(), idx.end());
        return idx;
    }
    for (u64 j = w - count; j < w; ++j) {
        u64 t = stream.next_below(j + 1);
        picked.push_back(contains(iv.x_l + 1 + t) ? iv.x_l + 1 + j : iv.x_l + 1 + t);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

std::vector<u64> load_array(const std::string& path) {
    std::vector<u64> values;
    bool binary = path.size() >= 4 && path.substr(path.size() - 4) == ".u64";
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    if (binary) {
        unsigned char buf[8];
        while (in.read(reinterpret_cast<char*>(buf), 8)) {
            u64 v = 0;
            for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
            values.push_back(v);
        }
        if (in.gcount() != 0) throw std::runtime_error("truncated u64 file: " + path);
    } else {
        std::string tok;
        while (in >> tok) {
            try {
                values.push_back(std::stoull(tok));
            } catch (const std::exception&) {
                throw std::runtime_error("bad value '" + tok + "' in " + path);
            }
        }
    }
    if (values.empty()) throw std::runtime_error("empty input: " + path);
    return values;
}

void save_array(const std::string& path, const std::vector<u64>& values) {
    bool binary = path.size() >= 4 && path.substr(path.size() - 4) == ".u64";
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (binary) {
        for (u64 v : values) {
            unsigned char buf[8];
            for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
            out.write(reinterpret_cast<char*>(buf), 8);
        }
    } else {
        for (u64 v : values) out << v << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace sublis
