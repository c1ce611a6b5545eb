#include "sat2track/track_io.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <vector>

#include "sat2track/errors.hpp"

namespace sat2track {

namespace {

class Writer {
public:
    Writer& word(std::string_view s) {
        sep();
        out_.append(s);
        return *this;
    }
    Writer& num(long long v) {
        sep();
        char buf[24];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        out_.append(buf, ptr);
        return *this;
    }
    Writer& pair(int a, int b) {
        sep();
        out_ += std::to_string(a);
        out_ += ',';
        out_ += std::to_string(b);
        return *this;
    }
    Writer& vec(const Vec3& v) { return num(v.x).num(v.y).num(v.z); }
    void endl() {
        out_ += '\n';
        fresh_ = true;
    }
    std::string take() { return std::move(out_); }

private:
    void sep() {
        if (!fresh_) out_ += ' ';
        fresh_ = false;
    }
    std::string out_;
    bool fresh_ = true;
};

class Lines {
public:
    explicit Lines(std::string_view text) : text_(text) {}

    // Advances to the next non-empty line; false at end of input.
    bool next() {
        while (pos_ < text_.size()) {
            std::size_t eol = text_.find('\n', pos_);
            if (eol == std::string_view::npos) eol = text_.size();
            std::string_view line = text_.substr(pos_, eol - pos_);
            pos_ = eol + 1;
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            tokens_.clear();
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && line[i] == ' ') ++i;
                std::size_t j = i;
                while (j < line.size() && line[j] != ' ') ++j;
                if (j > i) tokens_.push_back(line.substr(i, j - i));
                i = j;
            }
            if (!tokens_.empty()) return true;
        }
        return false;
    }

    const std::vector<std::string_view>& tokens() const { return tokens_; }
    std::string_view head() const { return tokens_.front(); }

    [[noreturn]] void fail(const std::string& what) const {
        throw FormatError("line " + std::to_string(line_no_) + ": " + what);
    }

    void expect_size(std::size_t n) const {
        if (tokens_.size() != n) fail("expected " + std::to_string(n) + " fields in '" + std::string(head()) + "' line");
    }
    void expect_word(std::size_t i, std::string_view w) const {
        if (tokens_.at(i) != w) fail("expected '" + std::string(w) + "'");
    }

    long long num(std::size_t i) const {
        if (i >= tokens_.size()) fail("missing field");
        long long v = 0;
        auto t = tokens_[i];
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size()) fail("bad number '" + std::string(t) + "'");
        return v;
    }
    std::uint32_t id(std::size_t i) const {
        auto v = num(i);
        if (v < 0 || v > 0xffffffffLL) fail("id out of range");
        return static_cast<std::uint32_t>(v);
    }
    int coord(std::size_t i) const {
        auto v = num(i);
        if (v < -(1LL << 30) || v > (1LL << 30)) fail("coordinate out of range");
        return static_cast<int>(v);
    }
    Vec3 vec(std::size_t i) const { return {coord(i), coord(i + 1), coord(i + 2)}; }
    std::pair<int, int> pair(std::size_t i) const {
        auto t = tokens_.at(i);
        auto comma = t.find(',');
        if (comma == std::string_view::npos) fail("bad point '" + std::string(t) + "'");
        auto parse = [&](std::string_view s) {
            int v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad point '" + std::string(t) + "'");
            return v;
        };
        return {parse(t.substr(0, comma)), parse(t.substr(comma + 1))};
    }

    template <typename F>
    auto wrap(F&& f) const {
        try {
            return f();
        } catch (const FormatError&) {
            throw;
        } catch (const Error& e) {
            fail(e.what());
        }
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
    std::vector<std::string_view> tokens_;
};

void expect_header(Lines& lines) {
    if (!lines.next() || lines.tokens().size() != 2 || lines.head() != "sat2track-format" ||
        lines.tokens()[1] != "1") {
        throw FormatError("missing '" + std::string(kFormatHeader) + "' header");
    }
}

}  // namespace

std::string write_track(const Track& track) {
    Writer w;
    w.word(kFormatHeader);
    w.endl();
    w.word("track").word("pads").num(static_cast<long long>(track.pads().size()))
        .word("links").num(static_cast<long long>(track.links().size()))
        .word("checkpoints").num(track.checkpoint_count())
        .word("start").num(track.start()).word("finish").num(track.finish());
    w.endl();
    for (const auto& p : track.pads()) {
        w.word("pad").num(p.id).vec(p.position).word(to_string(p.kind));
        if (p.checkpoint) w.word("checkpoint").num(*p.checkpoint);
        w.endl();
    }
    for (const auto& l : track.links()) {
        w.word("link").num(l.id).num(l.from).num(l.to).word(to_string(l.directionality))
            .word(to_string(l.cause));
        w.endl();
    }
    if (const auto& meta = track.meta()) {
        w.word("meta").word("variables").num(static_cast<long long>(meta->variables.size()))
            .word("clauses").num(static_cast<long long>(meta->clauses.size()));
        w.endl();
        for (std::size_t i = 0; i < meta->variables.size(); ++i) {
            const auto& v = meta->variables[i];
            w.word("meta-variable").num(static_cast<long long>(i + 1))
                .word("entry").num(v.entry).word("true").num(v.true_landing)
                .word("false").num(v.false_landing).word("true-end").num(v.true_end)
                .word("false-end").num(v.false_end).word("merge").num(v.merge);
            w.endl();
        }
        for (std::size_t c = 0; c < meta->clauses.size(); ++c) {
            const auto& site = meta->clauses[c];
            w.word("meta-clause").num(static_cast<long long>(c)).word("checkpoint").num(site.checkpoint);
            w.endl();
            for (std::size_t s = 0; s < 3; ++s) {
                const auto& slot = site.slots[s];
                w.word("meta-slot").num(static_cast<long long>(c)).num(static_cast<long long>(s))
                    .word("literal").num(slot.literal.to_dimacs())
                    .word("entry").num(slot.entry).word("touch").num(slot.touch)
                    .word("exit").num(slot.exit);
                w.endl();
            }
        }
        for (std::size_t li = 0; li < meta->occurrences.size(); ++li) {
            const long lit = static_cast<long>(li / 2 + 1) * (li % 2 ? -1 : 1);
            w.word("meta-occurrence").num(lit);
            for (const auto& o : meta->occurrences[li]) w.pair(static_cast<int>(o.clause), static_cast<int>(o.slot));
            w.endl();
        }
    }
    if (const auto& layout = track.layout()) {
        w.word("layout").word("blocks").num(static_cast<long long>(layout->blocks.size()))
            .word("jumps").num(static_cast<long long>(layout->jumps.size()))
            .word("lanes").num(static_cast<long long>(layout->lanes.size()));
        w.endl();
        for (const auto& b : layout->blocks) {
            w.word("block").vec(b.position).word(to_string(b.type)).word(to_string(b.orientation));
            w.endl();
        }
        for (const auto& j : layout->jumps) {
            w.word("jump").vec(j.from).vec(j.to);
            w.endl();
        }
        for (const auto& lane : layout->lanes) {
            w.word("lane").num(lane.wire);
            for (auto [x, y] : lane.points) w.pair(x, y);
            w.endl();
        }
    }
    w.word("end");
    w.endl();
    return w.take();
}

Track read_track(std::string_view text) {
    Lines lines(text);
    expect_header(lines);

    if (!lines.next() || lines.head() != "track") lines.fail("expected 'track' summary line");
    lines.expect_size(11);
    lines.expect_word(1, "pads");
    lines.expect_word(3, "links");
    lines.expect_word(5, "checkpoints");
    lines.expect_word(7, "start");
    lines.expect_word(9, "finish");
    const auto pad_count = lines.id(2);
    const auto link_count = lines.id(4);
    const auto checkpoints = lines.id(6);
    const auto start = lines.id(8);
    const auto finish = lines.id(10);

    std::vector<Pad> pads;
    for (std::uint32_t i = 0; i < pad_count; ++i) {
        if (!lines.next() || lines.head() != "pad") lines.fail("expected pad " + std::to_string(i));
        const auto& t = lines.tokens();
        if (t.size() != 6 && t.size() != 8) lines.fail("malformed pad line");
        Pad p;
        p.id = lines.id(1);
        if (p.id != i) lines.fail("pad ids must be sequential");
        p.position = lines.vec(2);
        p.kind = lines.wrap([&] { return parse_pad_kind(t[5]); });
        if (t.size() == 8) {
            lines.expect_word(6, "checkpoint");
            p.checkpoint = lines.id(7);
        }
        pads.push_back(p);
    }

    std::vector<Link> links;
    for (std::uint32_t i = 0; i < link_count; ++i) {
        if (!lines.next() || lines.head() != "link") lines.fail("expected link " + std::to_string(i));
        lines.expect_size(6);
        const auto& t = lines.tokens();
        Link l;
        l.id = lines.id(1);
        if (l.id != i) lines.fail("link ids must be sequential");
        l.from = lines.id(2);
        l.to = lines.id(3);
        l.directionality = lines.wrap([&] { return parse_directionality(t[4]); });
        l.cause = lines.wrap([&] { return parse_link_cause(t[5]); });
        links.push_back(l);
    }

    if (!lines.next()) lines.fail("missing 'end'");

    std::optional<ReductionMeta> meta;
    if (lines.head() == "meta") {
        lines.expect_size(5);
        lines.expect_word(1, "variables");
        lines.expect_word(3, "clauses");
        const auto n = lines.id(2);
        const auto m = lines.id(4);
        ReductionMeta rm;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!lines.next() || lines.head() != "meta-variable") lines.fail("expected meta-variable");
            lines.expect_size(14);
            if (lines.id(1) != i + 1) lines.fail("meta-variable out of sequence");
            lines.expect_word(2, "entry");
            lines.expect_word(4, "true");
            lines.expect_word(6, "false");
            lines.expect_word(8, "true-end");
            lines.expect_word(10, "false-end");
            lines.expect_word(12, "merge");
            rm.variables.push_back({lines.id(3), lines.id(5), lines.id(7), lines.id(9), lines.id(11), lines.id(13)});
        }
        for (std::uint32_t c = 0; c < m; ++c) {
            if (!lines.next() || lines.head() != "meta-clause") lines.fail("expected meta-clause");
            lines.expect_size(4);
            if (lines.id(1) != c) lines.fail("meta-clause out of sequence");
            lines.expect_word(2, "checkpoint");
            ClauseSite site;
            site.checkpoint = lines.id(3);
            for (std::uint32_t s = 0; s < 3; ++s) {
                if (!lines.next() || lines.head() != "meta-slot") lines.fail("expected meta-slot");
                lines.expect_size(11);
                if (lines.id(1) != c || lines.id(2) != s) lines.fail("meta-slot out of sequence");
                lines.expect_word(3, "literal");
                lines.expect_word(5, "entry");
                lines.expect_word(7, "touch");
                lines.expect_word(9, "exit");
                const auto lit = lines.num(4);
                if (lit == 0 || lit > n || -lit > n) lines.fail("slot literal out of range");
                site.slots[s] = {Literal::from_dimacs(static_cast<long>(lit)), lines.id(6), lines.id(8), lines.id(10)};
            }
            rm.clauses.push_back(site);
        }
        rm.occurrences.resize(2 * static_cast<std::size_t>(n));
        for (std::size_t li = 0; li < rm.occurrences.size(); ++li) {
            if (!lines.next() || lines.head() != "meta-occurrence") lines.fail("expected meta-occurrence");
            const long expect = static_cast<long>(li / 2 + 1) * (li % 2 ? -1 : 1);
            if (lines.num(1) != expect) lines.fail("meta-occurrence out of sequence");
            for (std::size_t k = 2; k < lines.tokens().size(); ++k) {
                auto [clause, slot] = lines.pair(k);
                if (clause < 0 || slot < 0) lines.fail("negative occurrence");
                rm.occurrences[li].push_back({static_cast<std::uint32_t>(clause), static_cast<std::uint32_t>(slot)});
            }
        }
        meta = std::move(rm);
        if (!lines.next()) lines.fail("missing 'end'");
    }

    std::optional<Layout> layout;
    if (lines.head() == "layout") {
        lines.expect_size(7);
        lines.expect_word(1, "blocks");
        lines.expect_word(3, "jumps");
        lines.expect_word(5, "lanes");
        const auto nb = lines.id(2);
        const auto nj = lines.id(4);
        const auto nl = lines.id(6);
        Layout lay;
        lay.blocks.reserve(nb);
        for (std::uint32_t i = 0; i < nb; ++i) {
            if (!lines.next() || lines.head() != "block") lines.fail("expected block");
            lines.expect_size(6);
            const auto& t = lines.tokens();
            Block b;
            b.position = lines.vec(1);
            b.type = lines.wrap([&] { return parse_block_type(t[4]); });
            b.orientation = lines.wrap([&] { return parse_orientation(t[5]); });
            lay.blocks.push_back(b);
        }
        for (std::uint32_t i = 0; i < nj; ++i) {
            if (!lines.next() || lines.head() != "jump") lines.fail("expected jump");
            lines.expect_size(7);
            lay.jumps.push_back({lines.vec(1), lines.vec(4)});
        }
        for (std::uint32_t i = 0; i < nl; ++i) {
            if (!lines.next() || lines.head() != "lane") lines.fail("expected lane");
            Lane lane;
            lane.wire = lines.id(1);
            for (std::size_t k = 2; k < lines.tokens().size(); ++k) lane.points.push_back(lines.pair(k));
            lay.lanes.push_back(std::move(lane));
        }
        layout = std::move(lay);
        if (!lines.next()) lines.fail("missing 'end'");
    }

    if (lines.head() != "end" || lines.tokens().size() != 1) lines.fail("expected 'end'");
    if (lines.next()) lines.fail("trailing content after 'end'");

    Track track = lines.wrap([&] {
        return Track(std::move(pads), std::move(links), start, finish, std::move(meta), std::move(layout));
    });
    if (track.checkpoint_count() != checkpoints) throw FormatError("checkpoint count does not match summary");
    return track;
}

std::string write_certificate(const Certificate& certificate) {
    Writer w;
    w.word(kFormatHeader);
    w.endl();
    for (const auto& a : certificate) {
        if (a.kind == Action::Kind::traverse) {
            w.word("t").num(a.link).word(a.direction == Direction::forward ? "fwd" : "rev");
        } else {
            w.word("r");
            if (a.target) w.num(*a.target);
        }
        w.endl();
    }
    return w.take();
}

Certificate read_certificate(std::string_view text) {
    Lines lines(text);
    expect_header(lines);
    Certificate out;
    while (lines.next()) {
        const auto& t = lines.tokens();
        if (lines.head() == "t") {
            lines.expect_size(3);
            Direction d;
            if (t[2] == "fwd") {
                d = Direction::forward;
            } else if (t[2] == "rev") {
                d = Direction::reverse;
            } else {
                lines.fail("direction must be fwd or rev");
            }
            out.push_back(Action::traverse(lines.id(1), d));
        } else if (lines.head() == "r") {
            if (t.size() == 1) {
                out.push_back(Action::respawn());
            } else {
                lines.expect_size(2);
                out.push_back(Action::respawn(lines.id(1)));
            }
        } else {
            lines.fail("unknown action '" + std::string(lines.head()) + "'");
        }
    }
    return out;
}

}  // namespace sat2track
