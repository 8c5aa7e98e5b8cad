"""Write the bundled word-pair TSV assets with verified row counts."""

from __future__ import annotations

import pathlib

ASSETS = pathlib.Path(__file__).resolve().parent.parent / "src" / "sentanalogy" / "assets"

COMMON_CAPITAL = [  # 23 pairs, capital / country
    ("Athens", "Greece"), ("Baghdad", "Iraq"), ("Bangkok", "Thailand"),
    ("Beijing", "China"), ("Berlin", "Germany"), ("Bern", "Switzerland"),
    ("Cairo", "Egypt"), ("Canberra", "Australia"), ("Hanoi", "Vietnam"),
    ("Havana", "Cuba"), ("Helsinki", "Finland"), ("Islamabad", "Pakistan"),
    ("Kabul", "Afghanistan"), ("London", "England"), ("Madrid", "Spain"),
    ("Moscow", "Russia"), ("Oslo", "Norway"), ("Ottawa", "Canada"),
    ("Paris", "France"), ("Rome", "Italy"), ("Stockholm", "Sweden"),
    ("Tehran", "Iran"), ("Tokyo", "Japan"),
]

ALL_CAPITAL = [  # 116 pairs, capital / country (single-token names only)
    ("Abuja", "Nigeria"), ("Accra", "Ghana"), ("Algiers", "Algeria"),
    ("Amman", "Jordan"), ("Ankara", "Turkey"), ("Antananarivo", "Madagascar"),
    ("Ashgabat", "Turkmenistan"), ("Asmara", "Eritrea"), ("Astana", "Kazakhstan"),
    ("Athens", "Greece"), ("Baghdad", "Iraq"), ("Baku", "Azerbaijan"),
    ("Bamako", "Mali"), ("Bangkok", "Thailand"), ("Banjul", "Gambia"),
    ("Beijing", "China"), ("Beirut", "Lebanon"), ("Belgrade", "Serbia"),
    ("Berlin", "Germany"), ("Bern", "Switzerland"), ("Bishkek", "Kyrgyzstan"),
    ("Bogota", "Colombia"), ("Brasilia", "Brazil"), ("Bratislava", "Slovakia"),
    ("Brussels", "Belgium"), ("Bucharest", "Romania"), ("Budapest", "Hungary"),
    ("Bujumbura", "Burundi"), ("Cairo", "Egypt"), ("Canberra", "Australia"),
    ("Caracas", "Venezuela"), ("Chisinau", "Moldova"), ("Conakry", "Guinea"),
    ("Copenhagen", "Denmark"), ("Dakar", "Senegal"), ("Damascus", "Syria"),
    ("Dhaka", "Bangladesh"), ("Doha", "Qatar"), ("Dublin", "Ireland"),
    ("Dushanbe", "Tajikistan"), ("Gaborone", "Botswana"), ("Georgetown", "Guyana"),
    ("Hanoi", "Vietnam"), ("Harare", "Zimbabwe"), ("Havana", "Cuba"),
    ("Helsinki", "Finland"), ("Islamabad", "Pakistan"), ("Jakarta", "Indonesia"),
    ("Kabul", "Afghanistan"), ("Kampala", "Uganda"), ("Kathmandu", "Nepal"),
    ("Khartoum", "Sudan"), ("Kiev", "Ukraine"), ("Kigali", "Rwanda"),
    ("Kingston", "Jamaica"), ("Libreville", "Gabon"), ("Lilongwe", "Malawi"),
    ("Lima", "Peru"), ("Lisbon", "Portugal"), ("Ljubljana", "Slovenia"),
    ("London", "England"), ("Luanda", "Angola"), ("Lusaka", "Zambia"),
    ("Madrid", "Spain"), ("Managua", "Nicaragua"), ("Manama", "Bahrain"),
    ("Manila", "Philippines"), ("Maputo", "Mozambique"), ("Minsk", "Belarus"),
    ("Mogadishu", "Somalia"), ("Monrovia", "Liberia"), ("Montevideo", "Uruguay"),
    ("Moscow", "Russia"), ("Muscat", "Oman"), ("Nairobi", "Kenya"),
    ("Nassau", "Bahamas"), ("Niamey", "Niger"), ("Nicosia", "Cyprus"),
    ("Nouakchott", "Mauritania"), ("Nuuk", "Greenland"), ("Oslo", "Norway"),
    ("Ottawa", "Canada"), ("Paramaribo", "Suriname"), ("Paris", "France"),
    ("Podgorica", "Montenegro"), ("Quito", "Ecuador"), ("Rabat", "Morocco"),
    ("Riga", "Latvia"), ("Rome", "Italy"), ("Santiago", "Chile"),
    ("Skopje", "Macedonia"), ("Sofia", "Bulgaria"), ("Stockholm", "Sweden"),
    ("Suva", "Fiji"), ("Taipei", "Taiwan"), ("Tallinn", "Estonia"),
    ("Tashkent", "Uzbekistan"), ("Tbilisi", "Georgia"), ("Tegucigalpa", "Honduras"),
    ("Tehran", "Iran"), ("Thimphu", "Bhutan"), ("Tirana", "Albania"),
    ("Tokyo", "Japan"), ("Tripoli", "Libya"), ("Tunis", "Tunisia"),
    ("Ulaanbaatar", "Mongolia"), ("Vaduz", "Liechtenstein"), ("Valletta", "Malta"),
    ("Vienna", "Austria"), ("Vientiane", "Laos"), ("Vilnius", "Lithuania"),
    ("Warsaw", "Poland"), ("Windhoek", "Namibia"), ("Yaounde", "Cameroon"),
    ("Yerevan", "Armenia"), ("Zagreb", "Croatia"),
]

CITY_IN_STATE = [  # 67 pairs, city / state (single-token names only)
    ("Chicago", "Illinois"), ("Houston", "Texas"), ("Philadelphia", "Pennsylvania"),
    ("Phoenix", "Arizona"), ("Dallas", "Texas"), ("Jacksonville", "Florida"),
    ("Indianapolis", "Indiana"), ("Austin", "Texas"), ("Detroit", "Michigan"),
    ("Memphis", "Tennessee"), ("Boston", "Massachusetts"), ("Seattle", "Washington"),
    ("Denver", "Colorado"), ("Baltimore", "Maryland"), ("Nashville", "Tennessee"),
    ("Louisville", "Kentucky"), ("Milwaukee", "Wisconsin"), ("Portland", "Oregon"),
    ("Tucson", "Arizona"), ("Fresno", "California"), ("Sacramento", "California"),
    ("Mesa", "Arizona"), ("Atlanta", "Georgia"), ("Omaha", "Nebraska"),
    ("Miami", "Florida"), ("Tulsa", "Oklahoma"), ("Oakland", "California"),
    ("Cleveland", "Ohio"), ("Minneapolis", "Minnesota"), ("Wichita", "Kansas"),
    ("Arlington", "Texas"), ("Bakersfield", "California"), ("Tampa", "Florida"),
    ("Anaheim", "California"), ("Honolulu", "Hawaii"), ("Pittsburgh", "Pennsylvania"),
    ("Lexington", "Kentucky"), ("Stockton", "California"), ("Cincinnati", "Ohio"),
    ("Anchorage", "Alaska"), ("Henderson", "Nevada"), ("Riverside", "California"),
    ("Lincoln", "Nebraska"), ("Orlando", "Florida"), ("Irvine", "California"),
    ("Toledo", "Ohio"), ("Plano", "Texas"), ("Laredo", "Texas"),
    ("Madison", "Wisconsin"), ("Lubbock", "Texas"), ("Chandler", "Arizona"),
    ("Scottsdale", "Arizona"), ("Reno", "Nevada"), ("Glendale", "Arizona"),
    ("Norfolk", "Virginia"), ("Fremont", "California"), ("Irving", "Texas"),
    ("Spokane", "Washington"), ("Richmond", "Virginia"), ("Boise", "Idaho"),
    ("Tacoma", "Washington"), ("Fontana", "California"), ("Modesto", "California"),
    ("Shreveport", "Louisiana"), ("Akron", "Ohio"), ("Augusta", "Georgia"),
    ("Mobile", "Alabama"),
]

CURRENCY = [  # 30 pairs, country / currency
    ("Algeria", "dinar"), ("Angola", "kwanza"), ("Argentina", "peso"),
    ("Armenia", "dram"), ("Brazil", "real"), ("Bulgaria", "lev"),
    ("Cambodia", "riel"), ("Canada", "dollar"), ("Croatia", "kuna"),
    ("Denmark", "krone"), ("Europe", "euro"), ("Hungary", "forint"),
    ("India", "rupee"), ("Iran", "rial"), ("Japan", "yen"),
    ("Korea", "won"), ("Latvia", "lats"), ("Lithuania", "litas"),
    ("Macedonia", "denar"), ("Malaysia", "ringgit"), ("Mexico", "peso"),
    ("Nigeria", "naira"), ("Poland", "zloty"), ("Romania", "leu"),
    ("Russia", "ruble"), ("Sweden", "krona"), ("Thailand", "baht"),
    ("Ukraine", "hryvnia"), ("USA", "dollar"), ("Vietnam", "dong"),
]

MAN_WOMAN = [  # 21 pairs; label = word class driving template adaptation
    ("grandpa", "grandma", "family"), ("grandfather", "grandmother", "family"),
    ("dad", "mom", "family"), ("father", "mother", "family"),
    ("son", "daughter", "family"), ("brother", "sister", "family"),
    ("uncle", "aunt", "family"), ("nephew", "niece", "family"),
    ("grandson", "granddaughter", "family"), ("husband", "wife", "family"),
    ("stepfather", "stepmother", "family"), ("stepson", "stepdaughter", "family"),
    ("groom", "bride", "family"),
    ("man", "woman", "occupation"), ("boy", "girl", "occupation"),
    ("king", "queen", "occupation"), ("prince", "princess", "occupation"),
    ("policeman", "policewoman", "occupation"), ("actor", "actress", "occupation"),
    ("waiter", "waitress", "occupation"),
    ("he", "she", "pronoun"),
]

NATIONALITY = [  # 41 pairs, country / nationality adjective
    ("Albania", "Albanian"), ("Argentina", "Argentinean"), ("Australia", "Australian"),
    ("Austria", "Austrian"), ("Belarus", "Belorussian"), ("Brazil", "Brazilian"),
    ("Bulgaria", "Bulgarian"), ("Cambodia", "Cambodian"), ("Chile", "Chilean"),
    ("China", "Chinese"), ("Colombia", "Colombian"), ("Croatia", "Croatian"),
    ("Denmark", "Danish"), ("Egypt", "Egyptian"), ("England", "English"),
    ("France", "French"), ("Germany", "German"), ("Greece", "Greek"),
    ("Iceland", "Icelandic"), ("India", "Indian"), ("Ireland", "Irish"),
    ("Israel", "Israeli"), ("Italy", "Italian"), ("Japan", "Japanese"),
    ("Korea", "Korean"), ("Macedonia", "Macedonian"), ("Malta", "Maltese"),
    ("Mexico", "Mexican"), ("Moldova", "Moldovan"), ("Netherlands", "Dutch"),
    ("Norway", "Norwegian"), ("Peru", "Peruvian"), ("Poland", "Polish"),
    ("Portugal", "Portuguese"), ("Russia", "Russian"), ("Slovakia", "Slovakian"),
    ("Spain", "Spanish"), ("Sweden", "Swedish"), ("Switzerland", "Swiss"),
    ("Thailand", "Thai"), ("Ukraine", "Ukrainian"),
]


def write_tsv(name: str, rows: list[tuple[str, ...]], labels: tuple[str, str], expect: int) -> None:
    assert len(rows) == expect, f"{name}: {len(rows)} rows, expected {expect}"
    assert len({(r[0], r[1]) for r in rows}) == expect, f"{name}: duplicate pairs"
    assert all(r[0] != r[1] for r in rows), f"{name}: identical-member pair"
    lines = [f"# w_a\tw_b\tlabel_a\tlabel_b"]
    for row in rows:
        label_a, label_b = (row[2], row[2]) if len(row) == 3 else labels
        lines.append(f"{row[0]}\t{row[1]}\t{label_a}\t{label_b}")
    (ASSETS / name).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{name}: {expect} pairs")


def main() -> None:
    write_tsv("pairs_common_capital.tsv", COMMON_CAPITAL, ("capital", "country"), 23)
    write_tsv("pairs_all_capital.tsv", ALL_CAPITAL, ("capital", "country"), 116)
    write_tsv("pairs_city_in_state.tsv", CITY_IN_STATE, ("city", "state"), 67)
    write_tsv("pairs_currency.tsv", CURRENCY, ("country", "currency"), 30)
    write_tsv("pairs_man_woman.tsv", MAN_WOMAN, ("", ""), 21)
    write_tsv("pairs_nationality.tsv", NATIONALITY, ("country", "nationality"), 41)


if __name__ == "__main__":
    main()
