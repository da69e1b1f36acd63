"""CLI behavior against real local fixture servers."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from synia.cli import main

from conftest import ACTOR_PAGE, NAMESPACE, write_config_file


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fixture_config(tmp_path, local_wiki, local_endpoint):
    local_wiki.pages.update(
        {
            NAMESPACE + "actor": ACTOR_PAGE,
            NAMESPACE + "index": "= Welcome =\nBrowse by aspect.\n",
            NAMESPACE
            + "author": "{{SPARQL|sparql=SELECT ?work WHERE { ?work wdt:P50 wd:{q} }}}",
            NAMESPACE
            + "rogue": "{{SPARQL|endpoint=https://evil.test/sparql|sparql=SELECT 1}}",
        }
    )
    return write_config_file(
        tmp_path,
        wiki_base=local_wiki.url,
        query_url=local_endpoint.url + "/sparql",
        embed_url=local_endpoint.url + "/embed.html",
    )


class TestRender:
    def test_json_output(self, runner, fixture_config):
        result = runner.invoke(
            main,
            ["render", "#author/Q18618629", "--config", fixture_config, "--format", "json"],
        )
        assert result.exit_code == 0, result.output
        doc = json.loads(result.output)
        assert doc["template_title"] == NAMESPACE + "author"
        assert [p["type"] for p in doc["panels"]] == ["table"]
        assert doc["panels"][0]["rows"]

    def test_actor_json_panel_order(self, runner, fixture_config):
        result = runner.invoke(
            main, ["render", "#actor/Q294647", "--config", fixture_config]
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert [p["type"] for p in doc["panels"]] == ["heading", "table", "graph"]

    def test_malformed_fragment_exits_2(self, runner, fixture_config):
        result = runner.invoke(main, ["render", "#bogus id", "--config", fixture_config])
        assert result.exit_code == 2

    def test_empty_fragment_renders_index(self, runner, fixture_config):
        result = runner.invoke(main, ["render", "", "--config", fixture_config])
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["template_title"] == NAMESPACE + "index"
        assert doc["panels"][0] == {"type": "heading", "level": 1, "text": "Welcome"}

    def test_wiki_unreachable_exits_3(self, runner, tmp_path):
        config = write_config_file(
            tmp_path,
            wiki_base="http://127.0.0.1:1",  # nothing listens there
            query_url="http://127.0.0.1:1/sparql",
            embed_url="http://127.0.0.1:1/embed.html",
        )
        result = runner.invoke(main, ["render", "#author/Q1", "--config", config])
        assert result.exit_code == 3

    def test_html_output(self, runner, fixture_config):
        result = runner.invoke(
            main,
            ["render", "#actor/Q294647", "--config", fixture_config, "--format", "html"],
        )
        assert result.exit_code == 0
        assert "<table>" in result.output
        assert "<iframe" in result.output
        assert "Movie One" in result.output

    def test_missing_template_is_success(self, runner, fixture_config):
        result = runner.invoke(main, ["render", "#ghost/Q1", "--config", fixture_config])
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["panels"][0]["type"] == "missing-template"

    def test_config_env_var_fallback(self, runner, fixture_config, monkeypatch):
        monkeypatch.setenv("SYNIA_CONFIG", fixture_config)
        result = runner.invoke(main, ["render", "#author/Q18618629"])
        assert result.exit_code == 0


class TestCheckTemplate:
    def test_reports_components(self, runner, fixture_config):
        result = runner.invoke(
            main, ["check-template", NAMESPACE + "actor", "--config", fixture_config]
        )
        assert result.exit_code == 0, result.output
        assert "components: 3" in result.output
        assert "heading (level 2): Movies" in result.output
        assert "view=BarChart" in result.output
        assert "no warnings" in result.output

    def test_disallowed_endpoint_warns_but_exits_zero(self, runner, fixture_config):
        result = runner.invoke(
            main, ["check-template", NAMESPACE + "rogue", "--config", fixture_config]
        )
        assert result.exit_code == 0
        assert "warnings:" in result.output
        assert "evil.test" in result.output

    def test_missing_page_exits_4(self, runner, fixture_config):
        result = runner.invoke(
            main, ["check-template", NAMESPACE + "ghost", "--config", fixture_config]
        )
        assert result.exit_code == 4
        assert "action=edit" in result.output

    def test_unreachable_wiki_exits_3(self, runner, tmp_path):
        config = write_config_file(
            tmp_path,
            wiki_base="http://127.0.0.1:1",
            query_url="http://127.0.0.1:1/sparql",
            embed_url="http://127.0.0.1:1/embed.html",
        )
        result = runner.invoke(main, ["check-template", "X:Y", "--config", config])
        assert result.exit_code == 3
