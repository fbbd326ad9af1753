import pytest

import presched


def test_onl_and_greedy_on_greedy_killer():
    inst = presched.gen_greedy_killer(8)
    sched, trace = presched.run_onl(inst)
    assert presched.check_feasible(inst, sched)["feasible"]
    assert presched.makespan(inst, sched) == trace["makespan"]
    greedy = presched.run_greedy(inst)
    assert presched.makespan(inst, greedy) >= 64


def test_oracle_never_beats_heuristics():
    for seed in range(1, 6):
        inst = presched.gen_random_dag(6, 0.3, 4, 2, seed)
        best, sched = presched.brute_force_optimal(inst)
        assert presched.check_feasible(inst, sched)["feasible"]
        assert best <= presched.makespan(inst, presched.run_greedy(inst))


def test_cap_values():
    assert [presched.cap(i) for i in (32, 33, 28)] == [32, 1, 4]


def test_scs_round_trip():
    scs = {"rho": 2, "sequences": [[1, 2], [2, 1]]}
    length, z = presched.scs_brute_force(scs)
    assert length == 3 and presched.is_supersequence(z, scs["sequences"])
    inst, mapping = presched.scs_to_rs(scs)
    sched = presched.supersequence_to_schedule(mapping, z)
    assert presched.makespan(inst, sched) <= 4 * length
    back = presched.schedule_to_supersequence(mapping, sched)
    assert presched.is_supersequence(back, scs["sequences"])


def test_lts_pipeline():
    lts = {
        "machines": [{"id": 1, "load": 3}, {"id": 2, "load": 5}],
        "jobs": [{"id": 1, "machine": 1}, {"id": 2, "machine": 2}, {"id": 3, "machine": 1}],
        "edges": [[1, 2], [2, 3]],
    }
    cost, _ = presched.lts_brute_force(lts)
    assert cost == 11
    prepared = presched.lts_prep(lts)
    inst, mapping = presched.lts_to_rs(prepared)
    best, sol = presched.lts_brute_force(prepared)
    sched = presched.lts_solution_to_schedule(mapping, sol)
    assert presched.check_feasible(inst, sched)["feasible"]
    back = presched.schedule_to_lts_solution(mapping, sched)
    assert len(back["blocks"]) >= 1


def test_errors_carry_codes():
    with pytest.raises(presched.PreschedError) as info:
        presched.cap(0)
    assert presched.error_code(info.value) == "ZERO_INPUT"
    bad = {"budgets": ["1/1"], "jobs": [{"id": 1, "duration": 1, "demand": ["1/1"]}], "edges": [[1, 1]]}
    report = presched.validate_instance(bad)
    assert not report["feasible"]
