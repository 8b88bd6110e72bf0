// template_bank.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Copyright 2026 The stutterlab authors

#include "stutterlab/template_bank.hpp"

#include "stutterlab/tokens.hpp"

namespace stutterlab {

namespace {

struct RawTemplate {
  const char* id;
  const char* domain;
  const char* intent;
  const char* text;
};

// Nine templates per domain, ordered by length. Lengths run 6..12 tokens so
// that reference length varies enough for length effects to be measurable.
const RawTemplate kRawTemplates[] = {
    {"wea01", "weather", "weather.current",
     "what is the weather right now"},
    {"wea02", "weather", "weather.city_today",
     "what is the weather in denver today"},
    {"wea03", "weather", "weather.rain_weekend",
     "will it rain at all this weekend"},
    {"wea04", "weather", "weather.high_temp",
     "what will the high temperature be this afternoon"},
    {"wea05", "weather", "weather.umbrella",
     "do i need an umbrella for the game"},
    {"wea06", "weather", "weather.snow_chance",
     "is there any chance of snow later this week"},
    {"wea07", "weather", "weather.wind",
     "what is the wind speed going to be this evening"},
    {"wea08", "weather", "weather.sunny_tomorrow",
     "can you tell me if it will be sunny tomorrow morning"},
    {"wea09", "weather", "weather.week_forecast",
     "what is the forecast for the rest of the week in chicago"},
    {"mus01", "music", "music.play_genre_room",
     "play some jazz in the kitchen"},
    {"mus02", "music", "music.album_year",
     "what year did this album come out"},
    {"mus03", "music", "music.volume_up",
     "turn the volume up a little bit"},
    {"mus04", "music", "music.skip",
     "skip to the next song on the list"},
    {"mus05", "music", "music.add_playlist",
     "add this song to my workout playlist please"},
    {"mus06", "music", "music.now_playing_artist",
     "who sings the song that is playing right now"},
    {"mus07", "music", "music.play_album",
     "play the new album by the band from last night"},
    {"mus08", "music", "music.play_quiet",
     "can you put on something quiet while i read my book"},
    {"mus09", "music", "music.make_playlist",
     "make a playlist with all the songs i liked over the summer"},
    {"cal01", "calendar", "calendar.query_day",
     "what is on my calendar today"},
    {"cal02", "calendar", "calendar.move_event",
     "move my dentist appointment to next friday"},
    {"cal03", "calendar", "calendar.create_reminder",
     "set a reminder to water the plants"},
    {"cal04", "calendar", "calendar.next_event",
     "when is my next meeting with the team"},
    {"cal05", "calendar", "calendar.add_event",
     "add a lunch with sarah on thursday noon"},
    {"cal06", "calendar", "calendar.check_free",
     "do i have anything planned for saturday evening yet"},
    {"cal07", "calendar", "calendar.reminder_deadline",
     "remind me to call the bank before it closes today"},
    {"cal08", "calendar", "calendar.cancel_notify",
     "cancel the meeting on friday and let everyone know by email"},
    {"cal09", "calendar", "calendar.free_time",
     "how much free time do i have between my meetings on monday"},
    {"con01", "contacts", "contacts.query_address",
     "what is my brothers home address"},
    {"con02", "contacts", "contacts.call",
     "call my mother on her cell phone"},
    {"con03", "contacts", "contacts.send_text",
     "send a text to my friend david"},
    {"con04", "contacts", "contacts.query_number",
     "what is the phone number for the office"},
    {"con05", "contacts", "contacts.save_number",
     "save this number as my new work contact"},
    {"con06", "contacts", "contacts.add_emergency",
     "add my neighbor to the list of emergency contacts"},
    {"con07", "contacts", "contacts.send_email",
     "send an email to my sister about the family trip"},
    {"con08", "contacts", "contacts.find_entry",
     "can you find the address book entry for my uncle steve"},
    {"con09", "contacts", "contacts.share_location",
     "can you share my location with my wife for the next hour"},
    {"tim01", "timers", "timers.set_timer",
     "set a timer for ten minutes"},
    {"tim02", "timers", "timers.set_alarm",
     "wake me up at six tomorrow morning"},
    {"tim03", "timers", "timers.cancel_alarm",
     "cancel the alarm i set for monday"},
    {"tim04", "timers", "timers.alarm_half_past",
     "set an alarm for half past seven please"},
    {"tim05", "timers", "timers.query_timer",
     "how much time is left on the timer"},
    {"tim06", "timers", "timers.pause_timer",
     "pause the timer while i answer the front door"},
    {"tim07", "timers", "timers.two_timers",
     "set two timers one for pasta and one for sauce"},
    {"tim08", "timers", "timers.extend_timer",
     "add five more minutes to the timer i started for laundry"},
    {"tim09", "timers", "timers.repeat_alarm",
     "set a repeating alarm for every weekday at a quarter to eight"},
    {"kno01", "knowledge", "knowledge.landmark_height",
     "how tall is the eiffel tower"},
    {"kno02", "knowledge", "knowledge.capital",
     "what is the capital of new zealand"},
    {"kno03", "knowledge", "knowledge.language",
     "what language do they speak in brazil"},
    {"kno04", "knowledge", "knowledge.moon_count",
     "how many moons does the planet saturn have"},
    {"kno05", "knowledge", "knowledge.longest_river",
     "what is the longest river in the world"},
    {"kno06", "knowledge", "knowledge.book_author",
     "who wrote the book about the old man fishing"},
    {"kno07", "knowledge", "knowledge.first_moonwalk",
     "who was the first person to walk on the moon"},
    {"kno08", "knowledge", "knowledge.largest_ocean",
     "what is the name of the largest ocean on the planet"},
    {"kno09", "knowledge", "knowledge.light_time",
     "how long does it take light to reach us from the sun"},
};

const char* const kOutOfDomainSentences[] = {
    "i went to the store yesterday and bought some apples",
    "she said the movie was too long but i liked it",
    "we should get together for coffee sometime next week",
    "the kids played outside until it got dark",
    "my car made a weird noise on the way home",
    "he forgot his keys at the office again",
    "the restaurant on the corner finally opened back up",
    "i could not sleep at all last night",
    "they painted their house a really bright shade of blue",
    "the meeting ran long so i missed my bus",
    "i have been reading a great book about the ocean",
    "our neighbors dog barks at every single delivery truck",
    "the bakery sells out of bread by nine most days",
    "i tripped over the rug and spilled my coffee",
    "her garden looks amazing this time of year",
    "the train was packed so i stood the whole way",
    "we watched the game at my cousins place",
    "i keep meaning to fix that squeaky door",
    "the library extended its hours for exam season",
    "my phone battery died right before the call",
    "they moved to a small town up north last spring",
    "the soup needs a little more salt i think",
    "i found twenty dollars in my old jacket",
    "the printer at work jammed three times today",
    "we took the long way home to watch the sunset",
    "my sister borrowed my bike and bent the wheel",
    "the cat knocked a glass off the counter again",
    "i signed up for a pottery class on tuesdays",
    "rain flooded the parking lot behind the gym",
    "he tells that same story at every family dinner",
};

}  // namespace

const std::vector<QueryTemplate>& BuiltinTemplates() {
  static const std::vector<QueryTemplate>* templates = [] {
    auto* out = new std::vector<QueryTemplate>();
    for (const auto& raw : kRawTemplates) {
      out->push_back(
          {raw.id, raw.domain, raw.intent, SplitWhitespace(raw.text)});
    }
    return out;
  }();
  return *templates;
}

const std::vector<TokenSeq>& BuiltinOutOfDomainSentences() {
  static const std::vector<TokenSeq>* sentences = [] {
    auto* out = new std::vector<TokenSeq>();
    for (const char* text : kOutOfDomainSentences) {
      out->push_back(SplitWhitespace(text));
    }
    return out;
  }();
  return *sentences;
}

}  // namespace stutterlab
