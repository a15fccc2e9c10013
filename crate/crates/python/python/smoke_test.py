"""Quick check of the compiled `swapins` module.

Build and install first, e.g. `maturin develop` inside crates/python.
"""

from fractions import Fraction

import swapins


def main():
    assert swapins.distance("ba", "aab") == 2
    assert swapins.distance("a", "b") is None
    assert swapins.distance("ab", "ab") == 0

    ops = swapins.script("ba", "aab")
    assert ops == [("ins", 1, "a"), ("swap", 2, None)], ops
    verdict = swapins.verify("ba", "aab", ops)
    assert verdict["valid"] and verdict["cost"] == 2

    assert swapins.weighted_distance("abc", "cbaa", 2, Fraction(3, 2)) == Fraction(13, 2)
    assert swapins.swap_delete_distance("aab", "ba") == 2

    inst = swapins.Instance("abcab", "bacbaabc")
    assert inst.distance() == swapins.ucs_distance(inst.source, inst.target)
    assert inst.distance() == swapins.matching_distance(inst.source, inst.target)
    st = inst.stats()
    assert inst.memo_entries() <= st["predicted_state_bound"]

    s, l = swapins.generate(3, 20, 30, "max-g", seed=7)
    assert len(s) == 20 and len(l) == 30
    assert swapins.verify(s, l, swapins.script(s, l))["valid"]

    try:
        swapins.ucs_distance("abcabc", "cbacbaabc", budget=5)
    except swapins.InstanceTooLarge:
        pass
    else:
        raise AssertionError("budget not enforced")

    print("smoke test passed")


if __name__ == "__main__":
    main()
