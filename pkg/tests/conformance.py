"""The three flagship conformance queries and their natural-language counterparts."""

FLAGSHIP_QUERY_1 = """MATCH (we:Weather_Event)-[:TargetsLocation]->(l:Location {Name:"NORTH_AMERICA"})
MATCH (p:Paper)-[m:Mention]->(we)
WHERE (m.Mention_Sentence CONTAINS 'WW' OR m.Mention_Sentence CONTAINS 'CAOs')
RETURN p.title AS PaperTitle, l.Name AS Location,
       we.Name AS WeatherEvent, m.Mention_Sentence AS Context"""

FLAGSHIP_QUERY_2 = """MATCH (p:Paper)-[:Mention]->(mod:Model|Project)
WHERE mod.Name CONTAINS 'CMIP5'
MATCH (p)-[:Mention]->(tel:Teleconnection {Name:"NORTH_ATLANTIC_OSCILLATION"})
MATCH (p)-[:Mention]->(loc:Location)
WHERE loc.Name CONTAINS 'Southeast' AND
      (loc.wikidata_description CONTAINS 'United States' OR
       loc.Name CONTAINS 'US')
RETURN p.title AS PaperTitle, mod.Name AS ModelProject,
       tel.Name AS Teleconnection, loc.Name AS Region"""

FLAGSHIP_QUERY_3 = """MATCH (p:Paper)-[:Mention]->(t:Teleconnection
    {Name:"PACIFIC_NORTH_AMERICAN_PNA_PATTERN"})
MATCH (t)-[:TargetsLocation]->(l:Location)
MATCH (p)-[:Mention]->(l)
WHERE l.wikidata_description CONTAINS "United States" OR
      l.Name IN ["USA", "United States of America"]
RETURN p.title AS PaperTitle, t.Name AS TeleconnectionPattern,
       l.Name AS Location"""

FLAGSHIP_QUERIES = {"L1": FLAGSHIP_QUERY_1, "L2": FLAGSHIP_QUERY_2, "L3": FLAGSHIP_QUERY_3}

QUESTION_1 = ("Which papers mention anomalous temperature regimes such as cold "
             "air outbreaks (CAOs) or warm waves (WWs) in relation to North "
             "America, specifically in the sentences where these terms appear?")

QUESTION_2 = ("Which papers mention CMIP5 models and the North Atlantic "
             "Oscillation (NAO) in the context of the Southeast United States?")

QUESTION_3 = ("Which papers mention the Pacific-North American (PNA) pattern "
             "in connection with locations in the United States?")

QUESTIONS = {"T1": QUESTION_1, "T2": QUESTION_2, "T3": QUESTION_3}
