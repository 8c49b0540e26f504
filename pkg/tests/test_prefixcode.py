import pytest

import oracles
from evoshare.errors import (
    Malformed,
    NotPrefixFree,
    OutOfDomain,
    SymbolOutOfRange,
    Truncated,
)
from evoshare.prefixcode import (
    M2Code,
    TableCode,
    decode,
    encode,
    get_codec,
    is_prefix_free,
    load_code_table,
    to_poly,
    verify_prefix_free,
)
from evoshare.ringpoly import TruncatedPoly
from evoshare.sizes import codeword_length

BUILTINS = [("gamma", 2), ("delta", 2), ("m1", 2), ("m1", 3), ("m1", 5),
            ("m2", 2), ("m2", 3), ("m2", 5)]


def test_encode_examples():
    assert str(encode(get_codec("gamma", 2), 1)) == "1"
    assert str(encode(get_codec("m1", 3), 5)) == "012"
    assert str(encode(get_codec("delta", 2), 4)) == "01100"
    assert str(encode(get_codec("delta", 2), 1)) == "1"
    assert str(encode(get_codec("m2", 3), 5)) == "212"


def test_decode_examples():
    assert decode(get_codec("gamma", 2), "1011") == (1, 1)
    assert decode(get_codec("delta", 2), "0110010") == (4, 5)
    table = TableCode(3, {2: "01", 5: "102", 8: "112"})
    assert decode(table, "11201") == (8, 3)


def test_decode_errors():
    with pytest.raises(Truncated):
        decode(get_codec("gamma", 2), "001")
    with pytest.raises(Truncated):
        decode(get_codec("gamma", 2), "")
    with pytest.raises(Malformed):
        decode(TableCode(3, {2: "01", 5: "102"}), "2")
    with pytest.raises(Malformed):
        decode(get_codec("m2", 3), "100")  # one-digit field starting with zero


def test_encode_out_of_domain():
    for name, p in BUILTINS:
        with pytest.raises(OutOfDomain):
            encode(get_codec(name, p), 0)
    with pytest.raises(OutOfDomain):
        encode(TableCode(2, {1: "1"}), 2)


def test_binary_codes_need_p2():
    with pytest.raises(ValueError):
        get_codec("gamma", 3)
    with pytest.raises(ValueError):
        get_codec("delta", 5)


def test_to_poly_examples():
    assert to_poly("101", 2) == TruncatedPoly(2, [1, 0, 1])
    assert to_poly("1", 2) == TruncatedPoly.one(2, 1)
    assert to_poly("112", 3) == TruncatedPoly(3, [1, 1, 2])
    with pytest.raises(SymbolOutOfRange):
        to_poly("13", 3)


def test_verify_prefix_free_examples():
    assert verify_prefix_free(get_codec("gamma", 2), 2048)
    assert verify_prefix_free(get_codec("m2", 3), 2048)
    assert not is_prefix_free(["10", "101"])
    with pytest.raises(NotPrefixFree):
        TableCode(2, {1: "10", 2: "101"})
    loose = TableCode(2, {1: "10", 2: "101"}, check=False)
    assert not verify_prefix_free(loose, 10)


@pytest.mark.parametrize("name,p", BUILTINS)
def test_prefix_free_2048(name, p):
    assert verify_prefix_free(get_codec(name, p), 2048)


@pytest.mark.parametrize("name,p", BUILTINS)
def test_round_trip_1e5(name, p):
    codec = get_codec(name, p)
    for t in range(1, 10**5 + 1):
        word = codec.symbols(t)
        assert codec.decode(word + (0, 1)) == (t, len(word))


@pytest.mark.parametrize("name,p", [("gamma", 2), ("delta", 2), ("m1", 3), ("m2", 3)])
def test_matches_string_oracle(name, p):
    codec = get_codec(name, p)
    for t in range(1, 5000):
        assert str(codec.encode(t)) == oracles.code_str(name, t, p)


@pytest.mark.parametrize("name,p", [("gamma", 2), ("delta", 2), ("m1", 3), ("m2", 3), ("m2", 5)])
def test_length_formula_1e6(name, p):
    codec = get_codec(name, p)
    # lengths only change at powers of p, so checking both sides of every
    # boundary plus a stride covers t <= 10^6
    ts = set(range(1, 10**6 + 1, 997))
    q = 1
    while q <= 10**6:
        ts.update((q - 1, q, q + 1))
        q *= p
    for t in sorted(x for x in ts if 1 <= x <= 10**6):
        n = len(oracles.code_str(name, t, p))
        assert codec.length(t) == n == codeword_length(name, t, p)
        assert len(codec.symbols(t)) == n


@pytest.mark.parametrize("name,p", [("gamma", 2), ("delta", 2), ("m1", 3), ("m2", 3)])
def test_valuation_bound_pairs_512(name, p):
    codec = get_codec(name, p)
    words = {t: codec.symbols(t) for t in range(1, 513)}
    for i in range(1, 513):
        for j in range(i + 1, 513):
            a, b = words[i], words[j]
            width = max(len(a), len(b))
            a0 = a + (0,) * (width - len(a))
            b0 = b + (0,) * (width - len(b))
            L = next(x for x in range(width) if a0[x] != b0[x])
            assert L <= min(len(a), len(b)) - 1


def test_table_code_and_loader(tmp_path):
    path = tmp_path / "codes.tsv"
    path.write_text("# example\n2\t01\n5\t102\n8\t112\n")
    code = load_code_table(path, 3)
    assert code.covers(5) and not code.covers(3)
    assert str(code.encode(5)) == "102"
    assert code.length(8) == 3

    path.write_text("#range 1 3\n1\t1\n2\t01\n")
    with pytest.raises(OutOfDomain):
        load_code_table(path, 2)
    path.write_text("1\t1\n2\t10\n")
    with pytest.raises(NotPrefixFree):
        load_code_table(path, 2)
    path.write_text("1 1\n")
    with pytest.raises(Malformed):
        load_code_table(path, 2)
    path.write_text("1\t1\n1\t01\n")
    with pytest.raises(Malformed):
        load_code_table(path, 2)


def test_codec_equality():
    assert get_codec("m2", 3) == M2Code(3)
    assert get_codec("m2", 3) != get_codec("m2", 5)
    assert TableCode(2, {1: "1"}) == TableCode(2, {1: (1,)})
