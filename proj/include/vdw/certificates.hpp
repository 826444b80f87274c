#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vdw/core.hpp"
#include "vdw/error.hpp"

namespace vdw {

// One entry of the bundled certificate database. `text` is the certificate
// body exactly as transcribed from its publication, line breaks included;
// `claimed_bound` is the published "> N" value and therefore also the
// expected stripped length.
struct CertificateRecord {
    std::string name;
    int num_colors = 0;   // r
    int ap_length = 0;    // k
    int claimed_bound = 0;
    int old_bound = 0;    // previously published lower bound
    std::string text;
};

// Certificate text alphabet: '0'-'9' for colors 0-9, letters (either case)
// for colors 10-35. Whitespace is ignored.
inline Coloring parse_certificate(std::string_view text, int r_declared) {
    if (r_declared < 1 || r_declared > 36)
        throw InvalidParameterError("declared color count must be in 1..36");
    std::vector<Color> colors;
    colors.reserve(text.size());
    std::size_t offset = 0;
    for (char ch : text) {
        ++offset;
        switch (ch) {
            case ' ':
            case '\t':
            case '\n':
            case '\r':
            case '\v':
            case '\f':
                continue;
            default:
                break;
        }
        Color c;
        if (ch >= '0' && ch <= '9')
            c = ch - '0';
        else if (ch >= 'A' && ch <= 'Z')
            c = ch - 'A' + 10;
        else if (ch >= 'a' && ch <= 'z')
            c = ch - 'a' + 10;
        else
            throw ParseError("character '" + std::string(1, ch) +
                                 "' outside certificate alphabet at offset " +
                                 std::to_string(offset),
                             offset);
        if (c >= r_declared)
            throw ColorOutOfRangeError(
                "symbol '" + std::string(1, ch) + "' maps to color " +
                    std::to_string(c) + ", out of range for r=" +
                    std::to_string(r_declared) + " (offset " +
                    std::to_string(offset) + ")",
                static_cast<int>(offset), c);
        colors.push_back(c);
    }
    if (colors.empty()) throw ParseError("certificate contains no symbols");
    return Coloring(std::move(colors));
}

// Inverse of parse_certificate up to line breaks. Emits uppercase letters
// for colors >= 10 and hard-wraps at line_width characters.
inline std::string format_certificate(const Coloring& coloring, int line_width) {
    if (line_width < 1) throw InvalidParameterError("line width must be positive");
    std::string out;
    out.reserve(static_cast<std::size_t>(coloring.size()) +
                static_cast<std::size_t>(coloring.size()) / static_cast<std::size_t>(line_width));
    int column = 0;
    for (int i = 1; i <= coloring.size(); ++i) {
        const Color c = coloring.at(i);
        if (c < 0 || c > 35)
            throw ColorOutOfRangeError("color " + std::to_string(c) +
                                           " at position " + std::to_string(i) +
                                           " has no certificate symbol",
                                       i, c);
        if (column == line_width) {
            out += '\n';
            column = 0;
        }
        out += static_cast<char>(c < 10 ? '0' + c : 'A' + (c - 10));
        ++column;
    }
    return out;
}

// Smallest p in 1..N with colors[i] = colors[i+p] for every valid i,
// i.e. N minus the length of the longest proper border (computed with the
// standard prefix function). Returns N for aperiodic sequences.
inline int detect_period(const Coloring& coloring) {
    const int n = coloring.size();
    if (n < 1) throw InvalidParameterError("coloring must not be empty");
    const auto& s = coloring.colors;
    std::vector<int> border(static_cast<std::size_t>(n), 0);
    for (int i = 1; i < n; ++i) {
        int j = border[static_cast<std::size_t>(i) - 1];
        while (j > 0 && s[static_cast<std::size_t>(i)] != s[static_cast<std::size_t>(j)])
            j = border[static_cast<std::size_t>(j) - 1];
        if (s[static_cast<std::size_t>(i)] == s[static_cast<std::size_t>(j)]) ++j;
        border[static_cast<std::size_t>(i)] = j;
    }
    return n - border[static_cast<std::size_t>(n) - 1];
}

// Repeats `block` cyclically out to length n (or truncates it).
inline Coloring unroll(const Coloring& block, int n) {
    const int p = block.size();
    if (p < 1) throw InvalidParameterError("block must not be empty");
    if (n < 1) throw InvalidParameterError("length must be positive");
    std::vector<Color> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = block.colors[static_cast<std::size_t>(i % p)];
    return Coloring(std::move(out));
}

// Certificate files may carry comment lines starting with '#'; those are
// dropped (with their newline) before the character-level parse.
inline std::string strip_certificate_comments(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool at_line_start = true;
    bool in_comment = false;
    for (char ch : text) {
        if (in_comment) {
            if (ch == '\n') {
                in_comment = false;
                at_line_start = true;
            }
            continue;
        }
        if (at_line_start && ch == '#') {
            in_comment = true;
            continue;
        }
        out += ch;
        at_line_start = ch == '\n';
    }
    return out;
}

inline Coloring load_certificate_file(const std::string& path, int r_declared) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open certificate file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(strip_certificate_comments(buf.str()), r_declared);
}

namespace detail {

inline constexpr const char* cert_w7_3 = R"(00113434103225034635411511224545214336145046522622335656325440256150633033446060436551
36026104414455010154066240130215525566121265100351241326636600232306211462352430040011
34341032250346354115112245452143361450465226223356563254402561506330334460604365513602
610441445501015406624013021552556612126510035124132663660023230621146235243004)";

inline constexpr const char* cert_w8_3 = R"(12140440452561661536300300732420300701415255217573373367404373363202141142616776775603
07677574342022045256656615373656616070434430141551552176751552536307007320211211426561
21141757363367434224220451524220261675775607044044301214044345256166153630030073242030
07014152552175733733674043733632021411426167767756030767757434202204525665661537365661
60704344301413515521767515525363070073202112114265612114175736336743422422045152422026
1675775607044044305)";

inline constexpr const char* cert_w9_3 = R"(24403861826453756867557736282433551407203756486707866884730354466251831486750781807700
58414655773620425078618020188116052576688473153618072013120022716368770058426472018312
42311338274708811605375831204235342244038581002271648604231534645335514060211338275071
53426457564466251713224403861826453756867557736282433551407203756486707866884730354466
25183148675078180770058414655773620425078618020188116052576688473153618072013120022716
36877005842647201831242311338274708811605375831204235342244038581002271648604231534645
3355140602113382750715342645756446625171320)";

inline constexpr const char* cert_w10_3 = R"(78804022787297879915122151228989915899151338983089800262332623390900269002624490941909
11373443734401011370113735501052010224845548455121224812248466121631213359566595662323
35923359577232742324460677606773434460344606883438534355717887178845455714557179945496
45466828998289956566825668280056507565779390093900676779367793911676186768804011040117
87880478804022787297879915122151228989915899151338983089800262332623390900269002624490
94190911373443734401011370113735501052010224845548455121224812248466121631213359566595
66232335923359577232742324460677606773434460344606883438534355717887178845455714557179
94549645466823998239956566825668280056507565779390093900676779367793911676186768804011
0401178788040)";

inline constexpr const char* cert_w11_3 = R"(3568726047804797AA45469066939253A179746798371589558A8005657A977A4A364028A8578A948269A2
69091167680A88050475139096890A5937A077A1A227879109916158624A1A79A106A48018802033898A21
AA272697350208A02170591299131449A9032003837A84613190132816A23AA24255A0A143114948095724
2A12439270340035366010254225A591A6835302354A38145114647712136533606A207946413465049256
2257588232476447170318A5752457615A367336869934358755828142906868568726047844797AA45469
866939253A179746798371589558A8005657A977A4A364028A8578A948269A669091167680A88050475139
096890A5937A077A1A227879109916158624A1A79A106A48018802033898A21AA272697350208A02170591
299131449A9032003837A84613190132816A23AA24255A0A1431149480957242A124392703400353660102
54225A591A6835302354A38145114647712136533606A2079464134650492562257588232476447170318A
5752457615A3673368699343587578281429068609)";

}  // namespace detail

// The five bundled certificates with their published bound metadata. The
// bodies are stored exactly as transcribed; two of them (W(10,3) and
// W(11,3)) contain transcription defects that verification reports as
// witnesses. The database never repairs them.
inline const std::vector<CertificateRecord>& db_entries() {
    static const std::vector<CertificateRecord> db = {
        {"W(7,3)", 7, 3, 336, 273, detail::cert_w7_3},
        {"W(8,3)", 8, 3, 449, 354, detail::cert_w8_3},
        {"W(9,3)", 9, 3, 559, 454, detail::cert_w9_3},
        {"W(10,3)", 10, 3, 701, 592, detail::cert_w10_3},
        {"W(11,3)", 11, 3, 816, 731, detail::cert_w11_3},
    };
    return db;
}

}  // namespace vdw
