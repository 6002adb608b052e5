#include "commlab/partition.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>

#include "commlab/errors.hpp"

namespace commlab {

namespace {

template <typename Id>
void canonicalize(std::span<const Id> raw, std::vector<CommunityId>& out, std::size_t& count) {
    const std::size_t n = raw.size();
    // Compact ids in first-appearance order; first appearance is also the
    // smallest member, which is the tie-break key.
    std::unordered_map<Id, CommunityId> compact;
    std::vector<CommunityId> dense(n);
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = compact.try_emplace(raw[i], static_cast<CommunityId>(sizes.size()));
        if (inserted) sizes.push_back(0);
        dense[i] = it->second;
        ++sizes[it->second];
    }
    std::vector<CommunityId> order(sizes.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](CommunityId a, CommunityId b) { return sizes[a] > sizes[b]; });
    std::vector<CommunityId> rank(sizes.size());
    for (CommunityId r = 0; r < order.size(); ++r) rank[order[r]] = r;
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rank[dense[i]];
    count = sizes.size();
}

}  // namespace

Partition Partition::from_assignment(std::span<const std::uint64_t> assignment) {
    Partition p;
    canonicalize(assignment, p.assignment_, p.community_count_);
    return p;
}

Partition Partition::from_assignment(std::span<const CommunityId> assignment) {
    Partition p;
    canonicalize(assignment, p.assignment_, p.community_count_);
    return p;
}

Partition Partition::singletons(std::size_t n) {
    Partition p;
    p.assignment_.resize(n);
    std::iota(p.assignment_.begin(), p.assignment_.end(), 0u);
    p.community_count_ = n;
    return p;
}

Partition Partition::all_in_one(std::size_t n) {
    Partition p;
    p.assignment_.assign(n, 0);
    p.community_count_ = n == 0 ? 0 : 1;
    return p;
}

std::vector<std::size_t> Partition::community_sizes() const {
    std::vector<std::size_t> sizes(community_count_, 0);
    for (CommunityId c : assignment_) ++sizes[c];
    return sizes;
}

std::vector<std::vector<NodeId>> Partition::members() const {
    std::vector<std::vector<NodeId>> out(community_count_);
    const auto sizes = community_sizes();
    for (std::size_t c = 0; c < out.size(); ++c) out[c].reserve(sizes[c]);
    for (NodeId i = 0; i < assignment_.size(); ++i) out[assignment_[i]].push_back(i);
    return out;
}

void write_partition_tsv(std::ostream& out, const Graph& g, const Partition& p) {
    if (p.size() != g.node_count()) throw ValidationError("partition size does not match graph");
    for (NodeId i = 0; i < p.size(); ++i) out << g.label(i) << '\t' << p[i] << '\n';
}

Partition read_partition_tsv(std::istream& in, const Graph& g) {
    constexpr auto unset = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> ids(g.node_count(), unset);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto sep = line.find_first_of(" \t", start);
        if (sep == std::string::npos) throw ParseError(line_no, "expected 'label<TAB>community'");
        const auto id_start = line.find_first_not_of(" \t", sep);
        if (id_start == std::string::npos) throw ParseError(line_no, "missing community id");
        const auto id_end = std::min(line.find_first_of(" \t", id_start), line.size());
        if (line.find_first_not_of(" \t", id_end) != std::string::npos) {
            throw ParseError(line_no, "extra fields");
        }
        std::uint64_t id = 0;
        const auto [ptr, ec] = std::from_chars(line.data() + id_start, line.data() + id_end, id);
        if (ec != std::errc() || ptr != line.data() + id_end || id == unset) {
            throw ParseError(line_no, "invalid community id");
        }
        const std::string label = line.substr(start, sep - start);
        const auto node = g.labels().find(label);
        if (!node) throw ValidationError("partition names unknown node '" + label + "'");
        if (ids[*node] != unset) throw ValidationError("node '" + label + "' assigned twice");
        ids[*node] = id;
    }
    for (NodeId i = 0; i < ids.size(); ++i) {
        if (ids[i] == unset) throw ValidationError("node '" + g.label(i) + "' missing from partition");
    }
    return Partition::from_assignment(std::span<const std::uint64_t>(ids));
}

}  // namespace commlab
