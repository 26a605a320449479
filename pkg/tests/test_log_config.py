import io
import json
import logging

from mockalex.log_config import configure_logging, get_logger


def test_logs_follow_the_current_stderr(monkeypatch):
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    first = io.StringIO()
    monkeypatch.setattr("sys.stderr", first)
    configure_logging(pretty=False, level=logging.INFO)
    try:
        get_logger().info("Walk done", steps=3)
        line = json.loads(first.getvalue().strip().splitlines()[-1])
        assert line["event"] == "Walk done"
        assert line["steps"] == 3

        first.close()
        second = io.StringIO()
        monkeypatch.setattr("sys.stderr", second)
        get_logger().warning("Check failed", item=7)
        line = json.loads(second.getvalue().strip().splitlines()[-1])
        assert line["event"] == "Check failed"
        assert line["level"] == "warning"
    finally:
        configure_logging()
