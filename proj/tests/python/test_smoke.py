import replaygen


def test_registry_lists_classes():
    ids = replaygen.known_class_ids()
    for want in ("split3", "horns", "meet0", "chain", "hard-chain",
                 "proper-four"):
        assert want in ids
    info = replaygen.class_info("horns")
    assert info["finite"]
    assert info["size"] == 2
    assert info["d_star"] == 4
    assert len(info["members"]) == 2


def test_element_bijection_round_trip():
    assert replaygen.element_index("*^1") == 1
    assert replaygen.element_index("0") == 2
    assert replaygen.element_index("-2") == 10
    for i in range(1, 40):
        assert replaygen.element_index(replaygen.element_at(i)) == i


def test_uniform_wrapper_wins_with_replay():
    v = replaygen.run("horns", "wrapper", "inject", target=1, horizon=150,
                      seed=7, notion="uniform")
    assert v["outcome"] == "completed"
    assert v["legal_for_target"]
    assert v["trigger_round"] > 0
    assert v["holds"] and v["success"]


def test_limit_run_settles_and_logs_rounds():
    v = replaygen.run("hard-chain", "wp", "fair", target=6, horizon=300,
                      notion="limit", include_rounds=True)
    assert v["holds"]
    assert v["rounds"] == 300
    assert len(v["rounds_log"]) == 300
    assert v["last_mistake"] < 225
    assert v["rounds_log"][0]["t"] == 1


def test_killer_certificate_holds():
    v = replaygen.run("hard-chain", "wp", "nonuniform-killer", killer_d=3,
                      horizon=400)
    assert v["kind"] == "killer_certificate"
    assert v["dichotomy"] and v["holds"]


def test_proper_duel_finds_persisting_dual():
    for gen in ("greedy", "critical"):
        v = replaygen.proper_duel(gen, horizon=200)
        assert v["outcome"] == "completed"
        assert v["holds"]
        assert v["persisting_duals"]


def test_diagonal_duel_forces_mistakes():
    v = replaygen.diagonal_duel(horizon=60)
    assert v["holds"]
    assert v["mistakes"] >= 20


def test_grid_fast_matches_pattern():
    g = replaygen.grid(fast=True)
    assert g["all_ok"]
    assert len(g["cells"]) == 12
    by = {(c["notion"], c["family"]): c for c in g["cells"]}
    assert by[("uniform", "finite")]["expected"] == "achievable"
    assert by[("limit", "countable")]["expected"] == "achievable"
    assert by[("nonuniform", "countable")]["expected"] == "forced-failure"
    assert by[("proper", "finite")]["expected"] == "forced-failure"
    assert g["csv"].splitlines()[0].startswith("notion,family,expected")
