import json
import os
import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aoevolve.errors import ConfigError, ParseError
from aoevolve.extractor import (
    ScanConfig,
    build_inventory,
    extract_entities,
    extract_version,
    fnv1a_64,
    glob_match,
    read_source,
    scan_tree,
    strip_noise,
)
from aoevolve.extractor.parser import fingerprint
from aoevolve.model import KINDS, EntityKind
from conftest import CORPUS, EXTRACTOR_FIXTURES

MANIFEST = json.loads((EXTRACTOR_FIXTURES / "expected.json").read_text(encoding="utf-8"))

# independent oracle: strip comments and literals with regexes, then count type headers
_NOISE = re.compile(
    r'"""[\s\S]*?"""|"(?:\\.|[^"\\\n])*"|\'(?:\\.|[^\'\\\n])*\'|//[^\n]*|/\*[\s\S]*?\*/'
)
_TYPE_HEADER = re.compile(r"(?<![\w$.@])(?:class|enum)\s+[A-Za-z_$]")


def regex_class_count(text):
    return len(_TYPE_HEADER.findall(_NOISE.sub(" ", text)))


def kinds_of(entities):
    out = {k: 0 for k in KINDS}
    for e in entities:
        out[e.kind] += 1
    return out


def keyed(entities):
    return {(e.kind, e.identity_key, e.fingerprint) for e in entities}


# ---- spec examples -------------------------------------------------------

def test_empty_file():
    assert extract_entities("", "E.java") == ([], [])


def test_class_with_two_methods():
    ents, diags = extract_entities("class A { void f() {} void g(int x) {} }", "A.java")
    counts = kinds_of(ents)
    assert counts[EntityKind.CLASS] == 1 and counts[EntityKind.METHOD] == 2 and not diags
    assert {e.identity_key for e in ents} == {"C:A", "M:C:A.f/0", "M:C:A.g/1"}


def test_aspect_members():
    src = "aspect P { pointcut save(): call(* *.save(..)); before(): save() {} }"
    ents, diags = extract_entities(src, "P.aj")
    assert kinds_of(ents) == {
        EntityKind.CLASS: 0, EntityKind.METHOD: 0, EntityKind.ASPECT: 1,
        EntityKind.POINTCUT: 1, EntityKind.ADVICE: 1,
    }
    assert {e.identity_key for e in ents} == {"A:P", "P:A:P.save/0", "D:A:P.before:save()"}


def test_constructor_excluded_by_default():
    ents, _ = extract_entities("class A { A() {} }", "A.java")
    assert kinds_of(ents)[EntityKind.METHOD] == 0
    ents, _ = extract_entities("class A { A() {} }", "A.java", ScanConfig(count_constructors=True))
    assert [e.identity_key for e in ents if e.kind is EntityKind.METHOD] == ["M:C:A.A/0"]


def test_display_name_is_package_qualified_path():
    ents, _ = extract_entities("package a.b; class Out { class In {} }", "Out.java")
    assert sorted(e.display_name for e in ents) == ["a.b.Out", "a.b.Out.In"]


def test_control_flow_is_not_a_method():
    src = "class A { void f() { if (x) { } while (y) { } for (;;) { } switch (z) { } } }"
    ents, _ = extract_entities(src, "A.java")
    assert [e.identity_key for e in ents if e.kind is EntityKind.METHOD] == ["M:C:A.f/0"]


# ---- fixture corpus -------------------------------------------------------

@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_fixture_matches_manifest(name):
    want = MANIFEST[name]
    ents, diags = extract_entities((EXTRACTOR_FIXTURES / name).read_text(encoding="utf-8"), name)
    inv = build_inventory("fx", [ents])
    for kind in KINDS:
        assert [e.identity_key for e in inv.entities[kind]] == want[kind.value], kind
    assert len(diags) == want["diagnostics"], [str(d) for d in diags]


def test_fixture_corpus_is_large_enough():
    assert len(MANIFEST) >= 12
    assert sorted(MANIFEST) == sorted(p.name for p in EXTRACTOR_FIXTURES.iterdir() if p.suffix in (".java", ".aj"))


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_class_count_matches_regex_oracle(name):
    text = (EXTRACTOR_FIXTURES / name).read_text(encoding="utf-8")
    ents, _ = extract_entities(text, name)
    assert kinds_of(ents)[EntityKind.CLASS] == regex_class_count(text)


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_locations_inside_file(name):
    text = (EXTRACTOR_FIXTURES / name).read_text(encoding="utf-8")
    ents, _ = extract_entities(text, name)
    n_lines = text.count("\n") + 1
    assert all(1 <= e.location.line <= n_lines and e.location.file == name for e in ents)


def test_interface_flag_counts_interfaces_and_their_methods():
    text = (EXTRACTOR_FIXTURES / "14_interfaces.java").read_text(encoding="utf-8")
    ents, _ = extract_entities(text, "14_interfaces.java", ScanConfig(count_interfaces=True))
    keys = {e.identity_key for e in ents}
    assert {"C:fx.ifaces.Shape", "C:fx.ifaces.Marker", "M:C:fx.ifaces.Shape.area/0",
            "M:C:fx.ifaces.Shape.describe/0", "M:C:fx.ifaces.Marker.value/0"} <= keys


def test_constructor_flag_on_fixture():
    text = (EXTRACTOR_FIXTURES / "06_constructors.java").read_text(encoding="utf-8")
    ents, _ = extract_entities(text, "06.java", ScanConfig(count_constructors=True))
    inv = build_inventory("v", [ents])
    assert [e.identity_key for e in inv.entities[EntityKind.METHOD]] == [
        "M:C:fx.ctors.Point.Point/0", "M:C:fx.ctors.Point.Point/1",
        "M:C:fx.ctors.Point.Point/2", "M:C:fx.ctors.Point.getX/0",
    ]


def test_intertype_declarations_are_reported():
    name = "10_intertype.aj"
    _, diags = extract_entities((EXTRACTOR_FIXTURES / name).read_text(encoding="utf-8"), name)
    assert [d.line for d in diags] == [4, 5, 6, 7, 8]
    assert all("intertype" in d.message for d in diags)
    with pytest.raises(ParseError) as err:
        extract_entities((EXTRACTOR_FIXTURES / name).read_text(encoding="utf-8"), name, ScanConfig(strict=True))
    assert len(err.value.diagnostics) == 5


def test_unbalanced_braces():
    src = "class A { void f() { }\nclass B { }"
    ents, diags = extract_entities(src, "A.java")
    assert diags
    with pytest.raises(ParseError):
        extract_entities(src, "A.java", ScanConfig(strict=True))
    src = "class A { }\n}\nclass B { }"
    ents, diags = extract_entities(src, "A.java")
    assert [e.identity_key for e in ents] == ["C:A"] and diags


# ---- fingerprints ----------------------------------------------------------

def test_fnv1a_reference_vectors():
    assert fnv1a_64(b"") == 0xCBF29CE484222325
    assert fnv1a_64(b"a") == 0xAF63DC4C8601EC8C
    assert fnv1a_64(b"foobar") == 0x85944171F73967E8


SEPARATORS = [" ", "\n", "\t", "  \n\t", " /* { } */ ", " // } {\n", "\r\n", " /** doc\n * { */\n"]


@settings(max_examples=30, deadline=None)
@given(data=st.data(), name=st.sampled_from(sorted(MANIFEST)))
def test_fingerprint_invariant_under_comments_and_layout(data, name):
    text = (EXTRACTOR_FIXTURES / name).read_text(encoding="utf-8")
    tokens, _ = strip_noise(text)
    seps = data.draw(st.lists(st.sampled_from(SEPARATORS), min_size=len(tokens), max_size=len(tokens)))
    rewritten = "".join(sep + t.text for sep, t in zip(seps, tokens))
    before, _ = extract_entities(text, name)
    after, _ = extract_entities(rewritten, name)
    assert keyed(before) == keyed(after)


def test_fingerprint_changes_when_a_token_changes():
    base = "class A { int f() { return 1; } }"
    (cls, f), _ = extract_entities(base, "A.java")
    (cls2, f2), _ = extract_entities(base.replace("1", "2"), "A.java")
    assert f.fingerprint != f2.fingerprint
    assert cls.fingerprint == cls2.fingerprint  # method bodies are not part of the class's own content


@given(st.lists(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,5}|[{}();.,]", fullmatch=True), min_size=1, max_size=30),
       st.data())
def test_single_token_change_changes_digest(words, data):
    tokens, _ = strip_noise(" ".join(words))
    i = data.draw(st.integers(0, len(tokens) - 1))
    replacement = data.draw(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,5}|[{}();.,]", fullmatch=True))
    if replacement == tokens[i].text:
        return
    changed, _ = strip_noise(" ".join(t.text if j != i else replacement for j, t in enumerate(tokens)))
    assert fingerprint(tokens) != fingerprint(changed)


# ---- depth correctness on generated sources --------------------------------

NOISE_SNIPPETS = ["// stray { brace\n", "/* } class Fake { */", 'String s = "{ class No }";', "char c = '}';"]


@st.composite
def java_source(draw):
    counter = iter(range(10_000))

    def type_decl(depth):
        kw = draw(st.sampled_from(["class", "class", "enum"]))
        name = f"T{next(counter)}"
        parts = [f"{kw} {name} {{"]
        if kw == "enum":
            parts.append("ONE, TWO;")
        methods = draw(st.integers(0, 3))
        for m in range(methods):
            parts.append(draw(st.sampled_from(NOISE_SNIPPETS)) if draw(st.booleans()) else "")
            parts.append(f"void m{m}(int a) {{ if (a > 0) {{ a--; }} }}")
        if depth < 3:
            for _ in range(draw(st.integers(0, 2))):
                parts.append(type_decl(depth + 1))
        parts.append(draw(st.sampled_from(NOISE_SNIPPETS)))
        parts.append("}")
        return "\n".join(parts)

    return "package gen;\n" + "\n".join(type_decl(0) for _ in range(draw(st.integers(1, 3))))


@settings(max_examples=60, deadline=None)
@given(java_source())
def test_class_count_matches_oracle_on_generated_sources(src):
    ents, diags = extract_entities(src, "Gen.java")
    assert not diags
    assert kinds_of(ents)[EntityKind.CLASS] == regex_class_count(src)
    assert kinds_of(ents)[EntityKind.METHOD] == len(re.findall(r"void m\d\(", _NOISE.sub(" ", src)))


# ---- tree scanning ----------------------------------------------------------

def _touch(root, *rels):
    for rel in rels:
        p = root / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text("class X {}\n", encoding="utf-8")


def test_scan_empty_directory(tmp_path):
    assert scan_tree(tmp_path, ScanConfig()) == []


def test_scan_sorted_and_filtered(tmp_path):
    _touch(tmp_path, "a/Foo.java", "a/Bar.aj", "a/notes.txt")
    assert scan_tree(tmp_path, ScanConfig()) == ["a/Bar.aj", "a/Foo.java"]
    assert scan_tree(tmp_path, ScanConfig(exclude_globs=("**/*.aj",))) == ["a/Foo.java"]


def test_scan_missing_root_names_path(tmp_path):
    with pytest.raises(ConfigError, match="nope"):
        scan_tree(tmp_path / "nope", ScanConfig())


@pytest.mark.skipif(not hasattr(os, "symlink"), reason="no symlinks")
def test_scan_does_not_follow_symlinked_dirs(tmp_path):
    _touch(tmp_path, "real/A.java")
    os.symlink(tmp_path / "real", tmp_path / "link", target_is_directory=True)
    assert scan_tree(tmp_path, ScanConfig()) == ["real/A.java"]


@pytest.mark.parametrize("pattern,path,expected", [
    ("**/*.java", "A.java", True),
    ("**/*.java", "a/b/A.java", True),
    ("*.java", "a/A.java", False),
    ("a/**", "a/b/c.txt", True),
    ("**/test/**", "src/test/X.java", True),
    ("src/?.aj", "src/A.aj", True),
    ("**/*.aj", "a/A.java", False),
])
def test_glob_match(pattern, path, expected):
    assert glob_match(pattern, path) is expected


def test_invalid_utf8_is_replaced_with_diagnostic(tmp_path):
    (tmp_path / "Bad.java").write_bytes(b"class Bad { String s = \"\xff\"; void f() {} }")
    text, diags = read_source(tmp_path / "Bad.java", "Bad.java")
    assert "�" in text and len(diags) == 1
    inv, diags = extract_version(tmp_path, "v")
    assert inv.counts()[EntityKind.METHOD] == 1 and diags
    with pytest.raises(ParseError):
        extract_version(tmp_path, "v", ScanConfig(strict=True))


# ---- inventory assembly ------------------------------------------------------

def test_build_inventory_empty():
    inv = build_inventory("v1", [])
    assert inv.label == "v1" and set(inv.counts().values()) == {0}


def test_build_inventory_merges_and_sorts():
    a, _ = extract_entities("class Zed {}", "z/Zed.java")
    b, _ = extract_entities("class Abe {}", "a/Abe.java")
    inv = build_inventory("v", {"z/Zed.java": a, "a/Abe.java": b})
    assert [e.identity_key for e in inv.entities[EntityKind.CLASS]] == ["C:Abe", "C:Zed"]


def test_duplicate_advice_keys_get_ordinals():
    src = "aspect L { before(): p() { x(); } before(): p() { y(); } before(): p() { z(); } }"
    ents, _ = extract_entities(src, "L.aj")
    inv = build_inventory("v", [ents])
    assert [e.identity_key for e in inv.entities[EntityKind.ADVICE]] == [
        "D:A:L.before:p()", "D:A:L.before:p()#2", "D:A:L.before:p()#3",
    ]
    assert [e.location.line for e in inv.entities[EntityKind.ADVICE]] == [1, 1, 1]


def test_build_inventory_independent_of_file_order():
    files = {}
    for i in range(5):
        rel = f"p/F{i}.java"
        files[rel], _ = extract_entities(f"package p; class Dup {{ void f() {{ {i}; }} }}", rel)
    ref = build_inventory("v", files).to_json()
    items = list(files.items())
    for seed in range(5):
        random.Random(seed).shuffle(items)
        assert build_inventory("v", dict(items)).to_json() == ref
        assert build_inventory("v", [ents for _, ents in items]).to_json() == ref
    inv = build_inventory("v", files)
    assert [e.location.file for e in inv.entities[EntityKind.CLASS]] == [f"p/F{i}.java" for i in range(5)]


@pytest.mark.parametrize("version", ["v1", "v2", "v3"])
def test_parallel_extraction_is_identical(version):
    seq, _ = extract_version(CORPUS / version, version, jobs=1)
    par, _ = extract_version(CORPUS / version, version, jobs=3)
    assert seq.to_json() == par.to_json()
