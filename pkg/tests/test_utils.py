import pytest

from dergraph.utils import Timer, Timing, iter_in_chunks


def test_timer_reports_to_stderr(capsys) -> None:
    with Timer("work", post_print=True) as timing:
        sum(range(1000))
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("work ")
    assert captured.err.strip().endswith(" s")
    assert timing.seconds >= 0


def test_timer_pre_print(capsys) -> None:
    with Timer("work", precision=2):
        pass
    err = capsys.readouterr().err
    assert err.startswith("work... ")
    # two digits after the point
    assert len(err.strip().split()[-2].split(".")[1]) == 2


def test_quiet_timer_still_measures(capsys) -> None:
    with Timer("work", report=False) as timing:
        pass
    assert capsys.readouterr() == ("", "")
    assert isinstance(timing, Timing)
    assert timing.seconds >= 0
    assert timing.format(3).count(".") == 1


def test_timer_records_on_exception(capsys) -> None:
    with pytest.raises(RuntimeError):
        with Timer("boom", report=False) as timing:
            raise RuntimeError
    assert timing.seconds >= 0
    assert capsys.readouterr().err == ""


def test_timing_format() -> None:
    assert Timing("x", 1.23456).format() == "1.23"
    assert Timing("x", 1.23456).format(4) == "1.2346"


@pytest.mark.parametrize(
    "seq,n,expected",
    [
        (list(range(5)), 2, [[0, 1], [2, 3], [4]]),
        (list(range(4)), 4, [[0, 1, 2, 3]]),
        ([], 3, []),
    ],
)
def test_iter_in_chunks(seq, n, expected) -> None:
    assert list(iter_in_chunks(seq, n)) == expected
