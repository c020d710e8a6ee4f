import pytest

from salary_model import ModelParameters, ResearcherProfile
from salary_model.files import data_path


@pytest.fixture(scope="session")
def params():
    return ModelParameters()


@pytest.fixture
def case1():
    return ResearcherProfile(experience_years=0, qualification_level=1, name="case1")


@pytest.fixture
def case2():
    return ResearcherProfile(
        experience_years=40,
        qualification_level=3,
        publications=100,
        h_index=50,
        grant_count=3,
        grant_total_kzt=50e6,
        name="case2",
    )


@pytest.fixture
def profiles_file():
    return data_path("profiles_paper.json")


@pytest.fixture
def anchors_file():
    return data_path("anchors_paper.json")
