#pragma once

#include <string>
#include <string_view>

#include "tamarkin/core/barcode.hpp"
#include "tamarkin/core/field.hpp"
#include "tamarkin/core/text.hpp"

namespace tamarkin {

/// Contents of a "barcode v1" file.
struct BarcodeDocument {
    FieldTag field = FieldTag::f2;
    GradedBarcode barcode;
};

/// Serializes in canonical (sorted) bar order so equal multisets give equal bytes.
inline std::string write_barcode(const GradedBarcode& barcode, FieldTag field = FieldTag::f2) {
    std::string out = "barcode v1\nfield " + to_string(field) + "\n";
    for (const Bar& b : barcode.sorted())
        out += "bar degree=" + std::to_string(b.degree) + " birth=" + b.birth.to_string() +
               " death=" + b.death.to_string() + "\n";
    return out;
}

inline BarcodeDocument parse_barcode(std::string_view doc, const std::string& source = "<barcode>") {
    text::Reader in(source, doc);
    in.expect_header("barcode");
    BarcodeDocument result;
    if (in.done()) in.fail(in.last_line(), 1, "missing 'field' line");
    {
        const auto& line = in.next();
        if (line.tokens.size() != 2 || line.tokens[0].text != "field") in.fail(line, line.tokens[0], "expected 'field f2|f3|q'");
        auto tag = parse_field_tag(line.tokens[1].text);
        if (!tag) in.fail(line, line.tokens[1], "unknown field '" + line.tokens[1].text + "'");
        result.field = *tag;
    }
    while (!in.done()) {
        const auto& line = in.next();
        if (line.tokens[0].text != "bar") in.fail(line, line.tokens[0], "expected 'bar', got '" + line.tokens[0].text + "'");
        if (line.tokens.size() != 4) in.fail(line, line.tokens[0], "expected 'bar degree=<int> birth=<rat> death=<rat>'");
        long degree = in.integer(line, line.tokens[1], in.value_of(line, line.tokens[1], "degree"));
        Rat birth = in.rat(line, line.tokens[2], in.value_of(line, line.tokens[2], "birth"));
        Rat death = in.rat(line, line.tokens[3], in.value_of(line, line.tokens[3], "death"));
        if (birth.is_pos_inf()) in.fail(line, line.tokens[2], "birth cannot be +inf");
        if (death.is_neg_inf()) in.fail(line, line.tokens[3], "death cannot be -inf");
        if (!(birth < death)) in.fail(line, line.tokens[3], "bar needs birth < death");
        result.barcode.add(Bar(birth, death, static_cast<int>(degree)));
    }
    return result;
}

}  // namespace tamarkin
