#include "uirepro/errors.hpp"
#include "uirepro/ui/xml.hpp"

#include <doctest.h>

#include <random>
#include <string>

using namespace uirepro;

TEST_CASE("parses a nested element tree with attributes in order") {
    XmlElement root = parse_xml(R"(<node class="android.widget.FrameLayout" bounds="[0,0][10,10]">
        <node class="android.widget.Button" text="OK"/>
        <node class="android.widget.TextView" text="Hi">
            <node class="android.view.View"/>
        </node>
    </node>)");
    CHECK(root.name == "node");
    REQUIRE(root.attributes.size() == 2);
    CHECK(root.attributes[0].first == "class");
    CHECK(root.attributes[0].second == "android.widget.FrameLayout");
    CHECK(root.attributes[1].first == "bounds");
    REQUIRE(root.children.size() == 2);
    CHECK(root.children[0].name == "node");
    REQUIRE(root.children[0].find_attribute("text") != nullptr);
    CHECK(*root.children[0].find_attribute("text") == "OK");
    CHECK(root.children[1].children.size() == 1);
    CHECK(root.children[0].find_attribute("missing") == nullptr);
}

TEST_CASE("skips declaration and comments") {
    XmlElement root = parse_xml("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                                "<!-- dump -->\n"
                                "<hierarchy rotation=\"0\"><node/><!-- x --></hierarchy>");
    CHECK(root.name == "hierarchy");
    REQUIRE(root.children.size() == 1);
    CHECK(root.children[0].name == "node");
}

TEST_CASE("decodes named entities and numeric character references") {
    XmlElement root = parse_xml(
        "<node text=\"a &amp; b &lt;c&gt; &quot;d&quot; &apos;e&apos; &#65;&#x42;\"/>");
    REQUIRE(root.find_attribute("text") != nullptr);
    CHECK(*root.find_attribute("text") == "a & b <c> \"d\" 'e' AB");
}

TEST_CASE("single quotes are accepted around attribute values") {
    XmlElement root = parse_xml("<node text='it &quot;works&quot;'/>");
    CHECK(*root.find_attribute("text") == "it \"works\"");
}

TEST_CASE("empty and element-free documents are rejected") {
    CHECK_THROWS_AS(parse_xml(""), EmptyDocumentError);
    CHECK_THROWS_AS(parse_xml("   \n\t "), EmptyDocumentError);
    CHECK_THROWS_AS(parse_xml("<!-- only a comment -->"), EmptyDocumentError);
}

TEST_CASE("malformed documents report a byte offset") {
    CHECK_THROWS_AS(parse_xml("<node"), MalformedXmlError);
    CHECK_THROWS_AS(parse_xml("<a><b></a>"), MalformedXmlError);
    CHECK_THROWS_AS(parse_xml("<node attr=oops/>"), MalformedXmlError);
    CHECK_THROWS_AS(parse_xml("<a></a><b></b>"), MalformedXmlError); // two roots
    try {
        parse_xml("<a><b></a>");
        FAIL("expected MalformedXmlError");
    } catch (const MalformedXmlError& e) {
        CHECK(std::string(e.what()).find("at byte") != std::string::npos);
    }
}

TEST_CASE("xml_escape covers the five special characters") {
    CHECK(xml_escape("a&b<c>d\"e'f") == "a&amp;b&lt;c&gt;d&quot;e&apos;f");
    CHECK(xml_escape("plain") == "plain");
}

TEST_CASE("escape then parse is the identity on random attribute values") {
    std::mt19937 rng(20240817);
    const std::string alphabet = "ab<>&\"' \t[]{}=/;:0123456789";
    std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> len(0, 24);
    for (int round = 0; round < 200; ++round) {
        std::string value;
        int n = len(rng);
        for (int i = 0; i < n; ++i) {
            value += alphabet[pick(rng)];
        }
        XmlElement root = parse_xml("<node v=\"" + xml_escape(value) + "\"/>");
        REQUIRE(root.find_attribute("v") != nullptr);
        CHECK(*root.find_attribute("v") == value);
    }
}
