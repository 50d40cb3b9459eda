// Copyright 2026 The Fairlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRLINK_NAME_POOLS_HPP
#define FAIRLINK_NAME_POOLS_HPP

#include <array>

// Static attribute pools for the synthetic person-record generator.
// Values are sampled rank-weighted (Zipf), so early entries are common and
// attribute collisions between distinct entities occur at realistic rates.

namespace fairlink::pools {

inline constexpr std::array<const char*, 250> kGivenNamesGroup1 = {
    "james", "john", "robert", "michael", "william", "david", "richard",
    "joseph", "thomas", "charles", "christopher", "daniel", "matthew",
    "anthony", "mark", "donald", "steven", "paul", "andrew", "joshua",
    "kenneth", "kevin", "brian", "george", "timothy", "ronald", "edward",
    "jason", "jeffrey", "ryan", "jacob", "gary", "nicholas", "eric",
    "jonathan", "stephen", "larry", "justin", "scott", "brandon", "benjamin",
    "samuel", "gregory", "alexander", "frank", "patrick", "raymond", "jack",
    "dennis", "jerry", "tyler", "aaron", "jose", "adam", "nathan", "henry",
    "douglas", "zachary", "peter", "kyle", "noah", "ethan", "jeremy",
    "walter", "christian", "keith", "roger", "terry", "austin", "sean",
    "gerald", "carl", "harold", "dylan", "arthur", "lawrence", "jordan",
    "jesse", "bryan", "billy", "bruce", "gabriel", "joe", "logan", "alan",
    "juan", "albert", "willie", "elijah", "wayne", "randy", "vincent",
    "mason", "roy", "ralph", "bobby", "russell", "bradley", "philip",
    "eugene", "louis", "cody", "luke", "harry", "damian", "caleb", "trevor",
    "miles", "micah", "dominic", "leo", "owen", "liam", "oscar", "felix",
    "hugo", "max", "simon", "marcus", "martin", "leon", "oliver", "harvey",
    "theodore", "sebastian", "julian", "xavier", "levi", "isaac", "ezra",
    "asher", "silas", "jasper", "beau", "weston", "graham", "dean", "blake",
    "marshall", "emmett", "rhys", "rowan", "finn", "callum", "angus",
    "hamish", "lachlan", "declan", "brendan", "ciaran", "niall", "ronan",
    "seamus", "ewan", "alistair", "duncan", "fraser", "gordon", "malcolm",
    "stuart", "barry", "clive", "colin", "derek", "geoffrey", "graeme", "ian",
    "nigel", "rodney", "clarence", "cecil", "herbert", "stanley", "leonard",
    "norman", "reginald", "wallace", "alfred", "ernest", "victor", "edwin",
    "frederick", "howard", "bernard", "clifford", "percy", "sidney",
    "wilfred", "rupert", "hector", "ivan", "leslie", "maurice", "oswald",
    "ramon", "salvador", "esteban", "diego", "alejandro", "andres", "felipe",
    "gustavo", "hernan", "ignacio", "javier", "lorenzo", "manuel", "mateo",
    "nicolas", "pablo", "rafael", "santiago", "sergio", "tomas", "vicente",
    "wei", "ming", "jun", "hao", "feng", "lei", "tao", "yong", "kai", "jin",
    "akira", "hiroshi", "kenji", "takeshi", "satoshi", "yuki", "daiki",
    "haruto", "ren", "sota", "arjun", "rohan", "dev", "karan", "raj", "amit",
    "vikram", "sanjay", "rahul", "anil", "sunil", "deepak", "ashok", "ravi",
    "kiran",
};

inline constexpr std::array<const char*, 250> kGivenNamesGroup2 = {
    "mary", "patricia", "jennifer", "linda", "elizabeth", "barbara", "susan",
    "jessica", "sarah", "karen", "lisa", "nancy", "betty", "margaret",
    "sandra", "ashley", "kimberly", "emily", "donna", "michelle", "carol",
    "amanda", "dorothy", "melissa", "deborah", "stephanie", "rebecca",
    "sharon", "laura", "cynthia", "kathleen", "amy", "angela", "shirley",
    "anna", "brenda", "pamela", "emma", "nicole", "helen", "samantha",
    "katherine", "christine", "debra", "rachel", "carolyn", "janet",
    "catherine", "maria", "heather", "diane", "ruth", "julie", "olivia",
    "joyce", "virginia", "victoria", "kelly", "lauren", "christina", "joan",
    "evelyn", "judith", "megan", "andrea", "cheryl", "hannah", "jacqueline",
    "martha", "gloria", "teresa", "ann", "sara", "madison", "frances",
    "kathryn", "janice", "jean", "abigail", "alice", "julia", "judy",
    "sophia", "grace", "denise", "amber", "doris", "marilyn", "danielle",
    "beverly", "isabella", "theresa", "diana", "natalie", "brittany",
    "charlotte", "marie", "kayla", "alexis", "lori", "bronwyn", "sinead",
    "niamh", "aoife", "isla", "matilda", "imogen", "poppy", "daisy", "ruby",
    "ivy", "willow", "harriet", "eloise", "annabelle", "georgia", "chloe",
    "zoe", "phoebe", "lucy", "ella", "mia", "ava", "amelia", "harper", "evie",
    "sienna", "layla", "audrey", "claire", "stella", "savannah", "aurora",
    "lucia", "violet", "hazel", "aria", "nora", "zara", "eliza", "maeve",
    "fiona", "orla", "brigid", "caitlin", "deirdre", "eileen", "grainne",
    "mairead", "nessa", "roisin", "siobhan", "una", "fenella", "morag",
    "elspeth", "iona", "kirsty", "senga", "ailsa", "carmen", "dolores",
    "elena", "gabriela", "ines", "josefina", "marisol", "pilar", "rosa",
    "adriana", "beatriz", "camila", "daniela", "estela", "fernanda",
    "guadalupe", "juana", "leticia", "mariana", "paola", "raquel", "silvia",
    "valentina", "ximena", "yolanda", "mei", "ling", "xiu", "yan", "hua",
    "juan", "fang", "na", "jing", "min", "sakura", "yui", "hina", "aoi",
    "rin", "mio", "saki", "yuna", "kaori", "akemi", "priya", "ananya", "diya",
    "isha", "kavya", "meera", "nisha", "pooja", "riya", "shreya", "tanvi",
    "zoya", "amira", "fatima", "mariam", "noor", "rania", "salma", "yasmin",
    "dalia", "farah", "hana", "iman", "lubna", "maha", "nadia", "rasha",
    "samira", "widad", "zainab", "halima", "safiya", "khadija", "cora",
    "dora", "edith", "elsie", "enid", "ethel", "florence", "gertrude",
    "gwendolyn", "hilda", "irene", "iris",
};

inline constexpr std::array<const char*, 500> kSurnames = {
    "smith", "johnson", "williams", "brown", "jones", "garcia", "miller",
    "davis", "rodriguez", "martinez", "hernandez", "lopez", "gonzalez",
    "wilson", "anderson", "thomas", "taylor", "moore", "jackson", "martin",
    "lee", "perez", "thompson", "white", "harris", "sanchez", "clark",
    "ramirez", "lewis", "robinson", "walker", "young", "allen", "king",
    "wright", "scott", "torres", "nguyen", "hill", "flores", "green", "adams",
    "nelson", "baker", "hall", "rivera", "campbell", "mitchell", "carter",
    "roberts", "gomez", "phillips", "evans", "turner", "diaz", "parker",
    "cruz", "edwards", "collins", "reyes", "stewart", "morris", "morales",
    "murphy", "cook", "rogers", "gutierrez", "ortiz", "morgan", "cooper",
    "peterson", "bailey", "reed", "kelly", "howard", "ramos", "kim", "cox",
    "ward", "richardson", "watson", "brooks", "chavez", "wood", "james",
    "bennett", "gray", "mendoza", "ruiz", "hughes", "price", "alvarez",
    "castillo", "sanders", "patel", "myers", "long", "ross", "foster",
    "jimenez", "powell", "jenkins", "perry", "russell", "sullivan", "bell",
    "coleman", "butler", "henderson", "barnes", "gonzales", "fisher",
    "vasquez", "simmons", "romero", "jordan", "patterson", "alexander",
    "hamilton", "graham", "reynolds", "griffin", "wallace", "moreno", "west",
    "cole", "hayes", "bryant", "herrera", "gibson", "ellis", "tran", "medina",
    "aguilar", "stevens", "murray", "ford", "castro", "marshall", "owens",
    "harrison", "fernandez", "mcdonald", "woods", "washington", "kennedy",
    "wells", "vargas", "henry", "chen", "freeman", "webb", "tucker", "guzman",
    "burns", "crawford", "olson", "simpson", "porter", "hunter", "gordon",
    "mendez", "silva", "shaw", "snyder", "mason", "dixon", "munoz", "hunt",
    "hicks", "holmes", "palmer", "wagner", "black", "robertson", "boyd",
    "rose", "stone", "salazar", "fox", "warren", "mills", "meyer", "rice",
    "schmidt", "garza", "daniels", "ferguson", "nichols", "stephens", "soto",
    "weaver", "ryan", "gardner", "payne", "grant", "dunn", "kelley",
    "spencer", "hawkins", "arnold", "pierce", "vazquez", "hansen", "peters",
    "santos", "hart", "bradley", "knight", "elliott", "cunningham", "duncan",
    "armstrong", "hudson", "carroll", "lane", "riley", "andrews", "alvarado",
    "ray", "delgado", "berry", "perkins", "hoffman", "johnston", "matthews",
    "pena", "richards", "contreras", "willis", "carpenter", "lawrence",
    "sandoval", "guerrero", "george", "chapman", "rios", "estrada", "ortega",
    "watkins", "greene", "nunez", "wheeler", "valdez", "harper", "burke",
    "larson", "santiago", "maldonado", "morrison", "franklin", "carlson",
    "austin", "dominguez", "carr", "lawson", "jacobs", "obrien", "lynch",
    "singh", "vega", "bishop", "montgomery", "oliver", "jensen", "harvey",
    "williamson", "gilbert", "dean", "sims", "espinoza", "howell", "li",
    "wong", "reid", "hanson", "le", "mccoy", "garrett", "erickson", "manning",
    "francis", "walters", "duran", "weiss", "mullins", "lambert", "barrett",
    "huang", "zhang", "may", "sutton", "barber", "stanley", "hopkins", "gill",
    "flowers", "parks", "moran", "little", "rhodes", "ball", "banks", "booth",
    "bowen", "briggs", "bush", "byrd", "cameron", "cannon", "chandler",
    "christensen", "cobb", "cohen", "conner", "cortez", "curry", "curtis",
    "dalton", "daniel", "dawson", "dennis", "doyle", "drake", "dudley",
    "dunlap", "eaton", "elliot", "farley", "farmer", "fields", "figueroa",
    "fleming", "fletcher", "floyd", "frazier", "french", "frost", "fuller",
    "gates", "gentry", "gibbs", "gilmore", "glenn", "goff", "goodman",
    "goodwin", "gould", "graves", "griffith", "gross", "hale", "haley",
    "hammond", "hampton", "hancock", "hardin", "harmon", "harrell", "hartley",
    "hatfield", "hebert", "hendricks", "hensley", "herring", "hess", "hester",
    "hinton", "hodge", "hodges", "hogan", "holland", "holloway", "holt",
    "hoover", "horn", "horton", "house", "houston", "hubbard", "huber",
    "huff", "hull", "ingram", "jarvis", "jefferson", "jennings", "joyce",
    "julian", "kane", "keller", "kemp", "kent", "kerr", "kirby", "kirk",
    "klein", "knapp", "knox", "lamb", "landry", "lang", "langley", "lara",
    "leach", "leblanc", "leonard", "lester", "levine", "levy", "lindsay",
    "lindsey", "livingston", "lloyd", "logan", "lowe", "lucas", "lyons",
    "macdonald", "macias", "mack", "madden", "mahoney", "maloney", "mann",
    "marks", "marsh", "mathews", "maxwell", "mayer", "maynard", "mcbride",
    "mccall", "mccarthy", "mcclain", "mcclure", "mcconnell", "mccormick",
    "mccullough", "mcdaniel", "mcdowell", "mcfarland", "mcgee", "mcgrath",
    "mcguire", "mcintosh", "mcintyre", "mckay", "mckee", "mckenzie",
    "mckinney", "mclaughlin", "mclean", "mcmahon", "mcmillan", "mcneil",
    "mcpherson", "meadows", "melton", "mercado", "mercer", "merritt",
    "meyers", "middleton", "miles", "miranda", "molina", "monroe", "montes",
    "moody", "mooney", "morin", "morrow", "morton", "moses", "mosley", "moss",
    "mueller", "mullen", "nash", "navarro", "neal", "newman", "newton",
    "nielsen", "nixon", "noble", "noel", "nolan", "norman", "norris",
    "norton", "nunes", "odonnell", "okeefe", "oliveira", "olsen", "oneal",
    "oneill", "orr",
};

inline constexpr std::array<const char*, 120> kSuburbs = {
    "parramatta", "blacktown", "penrith", "liverpool", "bankstown",
    "chatswood", "hornsby", "epping", "ryde", "strathfield", "burwood",
    "ashfield", "newtown", "marrickville", "randwick", "coogee", "bondi",
    "manly", "mosman", "cremorne", "balmain", "glebe", "redfern",
    "paddington", "woollahra", "kensington", "maroubra", "hurstville",
    "kogarah", "rockdale", "miranda", "cronulla", "sutherland", "engadine",
    "campbelltown", "camden", "richmond", "windsor", "katoomba", "springwood",
    "gosford", "wyong", "woywoy", "terrigal", "fitzroy", "carlton",
    "brunswick", "coburg", "preston", "thornbury", "northcote", "footscray",
    "sunshine", "werribee", "dandenong", "frankston", "ringwood", "doncaster",
    "camberwell", "hawthorn", "toorak", "elwood", "brighton", "moorabbin",
    "mentone", "cheltenham", "mordialloc", "toowong", "indooroopilly",
    "chermside", "aspley", "carindale", "capalaba", "cleveland", "ipswich",
    "logan", "glenelg", "prospect", "norwood", "unley", "mitcham",
    "salisbury", "gawler", "fremantle", "subiaco", "claremont", "nedlands",
    "joondalup", "rockingham", "mandurah", "armadale", "midland", "glenorchy",
    "kingston", "cabramatta", "fairfield", "auburn", "lidcombe", "granville",
    "merrylands", "guildford", "lakemba", "punchbowl", "belmore", "campsie",
    "earlwood", "bexley", "arncliffe", "mascot", "botany", "alexandria",
    "erskineville", "annandale", "leichhardt", "lilyfield", "rozelle",
    "drummoyne", "concord", "rhodes", "meadowbank",
};

}  // namespace fairlink::pools

#endif  // FAIRLINK_NAME_POOLS_HPP
